//! Registry binding each physical relation to the code that implements it,
//! rendered as a markdown reference.

use std::fmt::Write;

/// Where a relation lives in the code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Binding {
    Implemented(&'static str),
    OutOfScope(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Relation {
    pub name: &'static str,
    pub statement: &'static str,
    pub binding: Binding,
}

use Binding::{Implemented, OutOfScope};

pub const RELATIONS: &[Relation] = &[
    Relation {
        name: "bloch-steady-state",
        statement: "σ̄₋ = −(Δ − iγ/2)/Ω_R · s/(s+1), σ̄_Z = −1/(2(s+1))",
        binding: Implemented("model::steady_state"),
    },
    Relation {
        name: "saturation-parameter",
        statement: "s = (Ω_R²/2)/(Δ² + γ²/4)",
        binding: Implemented("model::saturation"),
    },
    Relation {
        name: "main-drift-equations",
        statement:
            "(Δ−Ω−iγ/2)δσ₊ − Ω_Rδσ_Z = −iF₊, (Δ+Ω+iγ/2)δσ₋ − Ω_Rδσ_Z = iF₋, (Ω+iγ)δσ_Z + (Ω_R/2)(δσ₊ − δσ₋) = iF_Z",
        binding: Implemented("oracle::drift_matrix(MainZ)"),
    },
    Relation {
        name: "satellite-drift-equations",
        statement: "(Δ+Ω−iγ/2)σ₊⁽ˣ⁾ − (Ω_R/2)|x⟩⟨b| = −iF₊⁽ˣ⁾, −(Ω_R/2)σ₊⁽ˣ⁾ + (Ω−iγ)|x⟩⟨b| = −iF_xb, at −Ω",
        binding: Implemented("oracle::drift_matrix(SatelliteX)"),
    },
    Relation {
        name: "kerr-retarded-integral",
        statement: "χ^(+-)(Ω) = −∫dΩ′/2π K^(+-)(Ω′)/(Ω − Ω′ + i0)",
        binding: Implemented("contour::chi_residue(KerrZ)"),
    },
    Relation {
        name: "parametric-retarded-integral",
        statement: "χ^(++)(Ω) = −∫dΩ′/2π K^(++)(Ω′)/(−Ω − Ω′ + i0)",
        binding: Implemented("contour::chi_residue(ParametricZ)"),
    },
    Relation {
        name: "transverse-retarded-integral",
        statement: "χ_xx(Ω) = −∫dΩ′/2π K_⊥(Ω′)/(Ω − Ω′ + i0)",
        binding: Implemented("contour::chi_residue(Transverse)"),
    },
    Relation {
        name: "kerr-denominator",
        statement: "D^(+-) = [(Δ+Ω′)² + γ²/4]·M(Ω′)·M̄(Ω′)",
        binding: Implemented("spectra::build_kernel(KerrZ)"),
    },
    Relation {
        name: "parametric-denominator",
        statement: "D^(++) = (Δ+Ω′+iγ/2)(Δ−Ω′+iγ/2)·M(Ω′)·M̄(Ω′)",
        binding: Implemented("spectra::build_kernel(ParametricZ)"),
    },
    Relation {
        name: "mollow-cubic",
        statement: "M = iγ/2·[Δ² − (Ω+iγ/2)²] + (Ω+iγ/2)·[Δ² − (Ω+iγ/2)² + Ω_R²]",
        binding: Implemented("triplet::mollow_poly"),
    },
    Relation {
        name: "kerr-numerator",
        statement: "N^(+-), six terms; see the transcription table",
        binding: Implemented("spectra::numerator_terms(KerrZ)"),
    },
    Relation {
        name: "parametric-numerator",
        statement: "N^(++), seven terms; see the transcription table",
        binding: Implemented("spectra::numerator_terms(ParametricZ)"),
    },
    Relation {
        name: "transverse-denominator",
        statement: "D_⊥ = [4(Δ+Ω′+iγ/2)(Ω′+iγ) − Ω_R²]·[conjugate-coefficient counterpart]",
        binding: Implemented("spectra::build_kernel(Transverse)"),
    },
    Relation {
        name: "transverse-numerator",
        statement: "N_⊥, four terms; see the transcription table",
        binding: Implemented("spectra::numerator_terms(Transverse)"),
    },
    Relation {
        name: "triplet-factorization",
        statement: "M ≡ −(Ω−Λ₁)(Ω−Λ₂)(Ω−Λ₃)",
        binding: Implemented("triplet::triplet_roots"),
    },
    Relation {
        name: "weak-field-kerr",
        statement: "χ^(+-) ≈ −[1 − Ω_R²/(2(Δ²+γ²/4))]/[Ω+Δ+iγ/2 + Ω_R²/(2(Δ−iγ/2))]",
        binding: Implemented("asymptotics::chi_weak(KerrZ)"),
    },
    Relation {
        name: "weak-field-parametric",
        statement: "χ^(++) ≈ −(1/2)Ω_R²/{[(Ω−iγ/2)² − Δ²](Δ+iγ/2)}",
        binding: Implemented("asymptotics::chi_weak(ParametricZ)"),
    },
    Relation {
        name: "weak-field-transverse",
        statement: "as weak-field-kerr with Ω_R²/2 replaced by Ω_R²/4",
        binding: Implemented("asymptotics::chi_weak(Transverse)"),
    },
    Relation {
        name: "saturated-triplet",
        statement: "Λ₁,₃ ≈ ∓Ω_R − 3iγ/4, Λ₂ = −iγ/2",
        binding: Implemented("triplet::triplet_roots_saturation"),
    },
    Relation {
        name: "saturated-center-kerr",
        statement: "χ^(+-) ≈ (1/2)iγ(Δ+iγ/2)/[Ω_R²(Ω+iγ/2)]",
        binding: Implemented("asymptotics::chi_saturation_center(KerrZ)"),
    },
    Relation {
        name: "saturated-center-parametric",
        statement: "χ^(++) ≈ (1/2)iγ(Δ−iγ/2)/[Ω_R²(−Ω+iγ/2)]",
        binding: Implemented("asymptotics::chi_saturation_center(ParametricZ)"),
    },
    Relation {
        name: "saturated-sideband-kerr",
        statement: "χ^(+-) ≈ (1/2)(Δ+iγ/2)/[Ω_R(Ω−Λ)], red sideband by Λ → −Λ*",
        binding: Implemented("asymptotics::chi_saturation_sideband(KerrZ)"),
    },
    Relation {
        name: "saturated-sideband-parametric",
        statement: "χ^(++) ≈ −(1/2)(Δ−iγ/2)/[Ω_R(−Ω−Λ)], red sideband by Λ → −Λ*",
        binding: Implemented("asymptotics::chi_saturation_sideband(ParametricZ)"),
    },
    Relation {
        name: "autler-townes-doublet",
        statement: "χ_xx ≈ −(1/4)[1/(Ω − Ω_R/2 + Δ/2 + 3iγ/4) + 1/(Ω + Ω_R/2 + Δ/2 + 3iγ/4)]",
        binding: Implemented("asymptotics::chi_saturation_transverse"),
    },
    Relation {
        name: "susceptibility-components",
        statement: "χ_zz^(+-), χ_zz^(++), χ_xx = χ_yy as principal tensor components",
        binding: Implemented("spectra::Component"),
    },
    Relation {
        name: "fluctuation-fourier-image",
        statement: "δσ(Ω) = ∫dt e^{iΩt} δσ(t), commutator spectrum lim (1/T)⟨[δσ(Ω), δσ(−Ω)]⟩",
        binding: Implemented("oracle::commutator_spectrum"),
    },
    Relation {
        name: "retarded-branch",
        statement: "1/(x + i0) = PV(1/x) − iπδ(x)",
        binding: Implemented("contour::chi_quadrature, quad::retarded_transform"),
    },
    Relation {
        name: "noise-adjoint-symmetry",
        statement: "F₊†(t) = F₋(t), F_Z† = F_Z",
        binding: Implemented("oracle::DiffusionMatrix::adjoint"),
    },
    Relation {
        name: "main-diffusion",
        statement: "2D_{++} = γ, 2D_{+Z} = γσ̄₋, 2D_{Z+} = γσ̄₊, 2D_{ZZ} = γ(1/2 + σ̄_Z)",
        binding: Implemented("oracle::diffusion_matrix(MainZ)"),
    },
    Relation {
        name: "satellite-diffusion",
        statement: "same block on (+⁽ˣ⁾, xb); rows and columns −⁽ˣ⁾, bx vanish",
        binding: Implemented("oracle::diffusion_matrix(SatelliteX)"),
    },
    Relation {
        name: "density-scale",
        statement: "n₀d₀²/(ħγ) = (3/4)n₀ƛ₀³",
        binding: Implemented("model::DensityScale::from_density_lambda3"),
    },
    Relation {
        name: "dense-renormalization",
        statement: "γ → √ε γ inside a transparent medium of permittivity ε",
        binding: Implemented("model::renormalize_dense"),
    },
    Relation {
        name: "probe-propagation",
        statement: "macroscopic wave equation for the probe field",
        binding: OutOfScope("propagation is not modelled"),
    },
    Relation {
        name: "phase-matching",
        statement: "spatial factor e^{2ik_c·R} and 2k_c ≈ k_s + k_i",
        binding: OutOfScope("χ^(++) is reported as the local coupling amplitude"),
    },
];

/// Names of relations the code must implement.
pub const IN_SCOPE: &[&str] = &[
    "bloch-steady-state",
    "saturation-parameter",
    "main-drift-equations",
    "satellite-drift-equations",
    "kerr-retarded-integral",
    "parametric-retarded-integral",
    "transverse-retarded-integral",
    "kerr-denominator",
    "parametric-denominator",
    "mollow-cubic",
    "kerr-numerator",
    "parametric-numerator",
    "transverse-denominator",
    "transverse-numerator",
    "triplet-factorization",
    "weak-field-kerr",
    "weak-field-parametric",
    "weak-field-transverse",
    "saturated-triplet",
    "saturated-center-kerr",
    "saturated-center-parametric",
    "saturated-sideband-kerr",
    "saturated-sideband-parametric",
    "autler-townes-doublet",
    "susceptibility-components",
    "fluctuation-fourier-image",
    "retarded-branch",
    "noise-adjoint-symmetry",
    "main-diffusion",
    "satellite-diffusion",
    "density-scale",
    "dense-renormalization",
];

/// Term-by-term listing of the kernel numerators, in the order built by
/// [`crate::spectra::numerator_terms`]. `h = iγ/2`, `R = Ω_R`, `w = Ω′`.
pub const NUMERATOR_TERMS: &[(&str, &[&str])] = &[
    (
        "kerr-z",
        &[
            "γ·M·M̄",
            "−γR⁴Δw",
            "(γ/2)R²(Δ − w − h)M̄",
            "(γ/2)R²(Δ − w + h)M",
            "γσ̄₋R(Δ + w − h)[(Δ − w + h)M − R²w(Δ − w − h)]",
            "γσ̄₊R(Δ + w + h)[(Δ − w − h)M̄ − R²w(Δ − w + h)]",
        ],
    ),
    (
        "parametric-z",
        &[
            "(γ/2)R²(Δ − w + h)M",
            "(γ/2)R²(Δ + w + h)M̄",
            "−γR⁴Δw",
            "γσ̄₋R(Δ + w − h)(Δ − w + h)M",
            "γσ̄₋R(Δ − w − h)(Δ + w + h)M̄",
            "−γσ̄₋R³w(Δ + w − h)(Δ − w − h)",
            "−γσ̄₊R³w(Δ + w + h)(Δ − w + h)",
        ],
    ),
    (
        "transverse",
        &["16γ(w² + γ²)", "4R²γ(1/2 + σ̄_Z)", "8Rγ(w + iγ)σ̄₋", "8Rγ(w − iγ)σ̄₊"],
    ),
];

const NOTES: &str = "\
## Units

Frequencies are in the unit of `γ` whenever `γ = 1`; every relation is homogeneous in `γ`, \
so the command line divides its inputs by `γ` and multiplies output frequencies back. \
Susceptibilities are in units of `n₀d₀²/(ħγ)` times the density scale.

## Sign convention

`χ = −scale·∫dΩ′/2π K(Ω′)/(σΩ − Ω′ + i0)`. For the undriven atom this gives \
`χ = −1/(Ω + Δ + iγ/2)`, so absorption at `Ω = −Δ` has positive `Im χ`. The resolvent \
oracle reproduces this sign independently.

## Determinant identity

Expanding the main drift determinant along its last row gives \
`(Δ² − z²)(z + iγ/2) + Ω_R²z` with `z = Ω + iγ/2`, which is the Mollow cubic term for term. \
The substitution `z = iy` makes the cubic real in `y`, so one root is always purely imaginary.

## Mixed moments

Only `⟨F_q†F_q′⟩ = 2D_{qq′}` is given. Every other moment follows from the adjoint symmetry: \
`⟨F_a F_b⟩ = ⟨F_ā†F_b⟩ = 2D_{āb}` with `+ ↔ −`, `Z ↔ Z` and `xb ↔ bx`.
";

/// The full reference document.
pub fn equation_map() -> String {
    let mut out = String::from("# Relation map\n\n| relation | statement | implementation |\n|---|---|---|\n");
    for r in RELATIONS {
        let target = match r.binding {
            Implemented(path) => format!("`{path}`"),
            OutOfScope(why) => format!("out of scope ({why})"),
        };
        let _ = writeln!(out, "| {} | {} | {} |", r.name, r.statement, target);
    }
    out.push('\n');
    out.push_str(NOTES);
    out.push_str("\n## Numerator terms\n");
    for (component, terms) in NUMERATOR_TERMS {
        let _ = write!(out, "\n### {component}\n\n| # | term |\n|---|---|\n");
        for (i, t) in terms.iter().enumerate() {
            let _ = writeln!(out, "| {i} | {t} |");
        }
    }
    out
}

/// In-scope relations lacking an implementation binding.
pub fn missing_bindings() -> Vec<&'static str> {
    IN_SCOPE
        .iter()
        .copied()
        .filter(|name| {
            !RELATIONS
                .iter()
                .any(|r| r.name == *name && matches!(r.binding, Implemented(_)))
        })
        .collect()
}
