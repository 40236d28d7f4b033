//! Codings of irrational rotations by the partition `[0, κ) ∪ [κ, 1)`: exact
//! word generation, the type of the cut value, the shape of the Ellis
//! semigroup, and factor-map verdicts.

mod quadratic;

pub use quadratic::{QuadraticDoc, QuadraticNumber};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The cut value `κ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kappa {
    /// `(m·α + n)/k` with `gcd(m, n, k) = 1` and `k >= 1`.
    Combination { m: i64, n: i64, k: i64 },
    /// Not in `ℚα + ℚ`; carried symbolically.
    Generic,
}

impl Kappa {
    /// Reduced to lowest terms with a positive denominator.
    pub fn combination(m: i64, n: i64, k: i64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidInput("kappa denominator is zero".into()));
        }
        let g = m.gcd(&n).gcd(&k);
        let s = k.signum();
        Ok(Kappa::Combination {
            m: s * m / g,
            n: s * n / g,
            k: s * k / g,
        })
    }
}

/// Rotation angle and cut value of an `(α, κ)`-Sturmian system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SturmianParams {
    alpha: QuadraticNumber,
    kappa: Kappa,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum KappaDoc {
    Combination { m: i64, n: i64, k: i64 },
    Tag(GenericTag),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GenericTag {
    Generic,
}

/// JSON form: `{"alpha": {"p", "q", "r", "d"}, "kappa": {"m", "n", "k"} | "generic"}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsDoc {
    pub alpha: QuadraticDoc,
    pub kappa: KappaDoc,
}

impl SturmianParams {
    /// `α` must be irrational and `κ` must not be an integer.
    pub fn new(alpha: QuadraticNumber, kappa: Kappa) -> Result<Self> {
        if alpha.is_rational() {
            return Err(Error::InvalidInput("rotation angle must be irrational".into()));
        }
        let kappa = match kappa {
            Kappa::Combination { m, n, k } => Kappa::combination(m, n, k)?,
            Kappa::Generic => Kappa::Generic,
        };
        let params = SturmianParams { alpha, kappa };
        if let Some(value) = params.kappa_value() {
            if value.is_zero() {
                return Err(Error::InvalidInput("cut value is 0 modulo 1".into()));
            }
        }
        Ok(params)
    }

    pub fn from_doc(doc: &ParamsDoc) -> Result<Self> {
        let alpha = QuadraticNumber::from_doc(&doc.alpha)?;
        let kappa = match doc.kappa {
            KappaDoc::Combination { m, n, k } => Kappa::Combination { m, n, k },
            KappaDoc::Tag(GenericTag::Generic) => Kappa::Generic,
        };
        SturmianParams::new(alpha, kappa)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ParamsDoc = serde_json::from_str(text)?;
        SturmianParams::from_doc(&doc)
    }

    pub fn to_doc(&self) -> ParamsDoc {
        ParamsDoc {
            alpha: self.alpha.to_doc(),
            kappa: match self.kappa {
                Kappa::Combination { m, n, k } => KappaDoc::Combination { m, n, k },
                Kappa::Generic => KappaDoc::Tag(GenericTag::Generic),
            },
        }
    }

    pub fn alpha(&self) -> QuadraticNumber {
        self.alpha
    }

    pub fn kappa(&self) -> Kappa {
        self.kappa
    }

    /// `κ` reduced modulo 1, when it has an exact value.
    pub fn kappa_value(&self) -> Option<QuadraticNumber> {
        match self.kappa {
            Kappa::Combination { m, n, k } => {
                let numerator = QuadraticNumber::integer(m) * self.alpha + QuadraticNumber::integer(n);
                Some((numerator / QuadraticNumber::integer(k)).fract())
            }
            Kappa::Generic => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KappaType {
    /// `κ ∈ αℤ + ℤ`.
    Type1,
    /// `κ ∈ ½(αℤ + ℤ)` but not in `αℤ + ℤ`.
    Type2,
    /// Neither.
    Type3,
}

pub fn classify_kappa(params: &SturmianParams) -> KappaType {
    match params.kappa {
        Kappa::Combination { k: 1, .. } => KappaType::Type1,
        Kappa::Combination { k: 2, .. } => KappaType::Type2,
        _ => KappaType::Type3,
    }
}

/// Boundary convention of the coding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Boundary {
    /// `a` iff `0 <= {nα + φ} < κ`.
    Upper,
    /// `a` iff `0 < {nα + φ} <= κ`.
    Lower,
}

/// `ω_φ^±(n)` for `n` in `range`, as a string over `{a, b}`.
pub fn generate_word(
    params: &SturmianParams,
    phi: QuadraticNumber,
    boundary: Boundary,
    range: std::ops::Range<i64>,
) -> Result<String> {
    let kappa = params.kappa_value().ok_or(Error::GenericCut)?;
    let alpha = params.alpha;
    alpha.checked_add(&phi)?;
    Ok(range
        .map(|n| {
            let t = (QuadraticNumber::integer(n) * alpha + phi).fract();
            let is_a = match boundary {
                Boundary::Upper => t < kappa,
                Boundary::Lower => !t.is_zero() && t <= kappa,
            };
            if is_a {
                'a'
            } else {
                'b'
            }
        })
        .collect())
}

/// `ℤ ⊔ (LZ₂ × S¹)`: the shifts `σⁿ`, and pairs `(p, z)` of one of the two
/// idempotents and a point of the circle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllisModel {
    pub idempotent_count: usize,
    /// Angle by which `σ` rotates the circle coordinate.
    pub rotation: QuadraticDoc,
    /// Degree of the circle over the base circle.
    pub circle_degree: u32,
    pub description: String,
}

pub fn ellis_model(params: &SturmianParams) -> EllisModel {
    ellis_model_of_cover(params, 1)
}

/// The model for a `degree`-fold cover whose circle coordinate rotates by
/// `α/degree`.
pub fn ellis_model_of_cover(params: &SturmianParams, degree: u32) -> EllisModel {
    assert!(degree >= 1);
    let rotation = (params.alpha / QuadraticNumber::integer(degree as i64)).fract();
    EllisModel {
        idempotent_count: 2,
        rotation: rotation.to_doc(),
        circle_degree: degree,
        description: format!(
            "Z ⊔ (LZ_2 × S^1), σ rotates S^1 by {}; depends on the rotation angle only",
            rotation
        ),
    }
}

/// One of the two minimal idempotents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Idempotent {
    /// Picks `ω⁺` in singular fibres.
    Plus,
    /// Picks `ω⁻` in singular fibres.
    Minus,
}

/// An element of the Ellis model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EllisElement {
    Shift(i64),
    Pair(Idempotent, QuadraticNumber),
}

impl EllisElement {
    /// Product in the model: shifts add, shifts rotate the circle by
    /// `nα`, and `(p, z)(q, w) = (p, z + w)`.
    pub fn multiply(&self, other: &EllisElement, alpha: QuadraticNumber) -> EllisElement {
        use EllisElement::*;
        match (*self, *other) {
            (Shift(n), Shift(m)) => Shift(n + m),
            (Shift(n), Pair(p, z)) | (Pair(p, z), Shift(n)) => {
                Pair(p, (z + QuadraticNumber::integer(n) * alpha).fract())
            }
            (Pair(p, z), Pair(_, w)) => Pair(p, (z + w).fract()),
        }
    }
}

/// How a sequence of shifts `σ^{n_ν}` behaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceDescriptor {
    /// `n_ν` is eventually `n`.
    Bounded(i64),
    /// `n_ν α` converges to `z` from above.
    ApproachFromAbove(QuadraticNumber),
    /// `n_ν α` converges to `z` from below.
    ApproachFromBelow(QuadraticNumber),
}

pub fn evaluate_limit(sequence: SequenceDescriptor) -> EllisElement {
    match sequence {
        SequenceDescriptor::Bounded(n) => EllisElement::Shift(n),
        SequenceDescriptor::ApproachFromAbove(z) => EllisElement::Pair(Idempotent::Plus, z.fract()),
        SequenceDescriptor::ApproachFromBelow(z) => EllisElement::Pair(Idempotent::Minus, z.fract()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FactorVerdict {
    FactorExists,
    NoConclusion,
    DifferentRotation,
}

/// Whether a factor map `X_{α,κ} → X_{α',κ'}` follows from the Ellis
/// semigroup criterion.
pub fn factor_verdict(source: &SturmianParams, target: &SturmianParams) -> FactorVerdict {
    // irrational angles from different fields never agree
    let same_rotation = source.alpha.radicand() == target.alpha.radicand()
        && (source.alpha.fract() - target.alpha.fract()).is_zero();
    if !same_rotation {
        return FactorVerdict::DifferentRotation;
    }
    match (classify_kappa(source), classify_kappa(target)) {
        (_, KappaType::Type1) | (KappaType::Type2, KappaType::Type2) => FactorVerdict::FactorExists,
        _ => FactorVerdict::NoConclusion,
    }
}

/// Both boundary codings on a window starting at 0 with phase 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleWords {
    pub upper: String,
    pub lower: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub params: ParamsDoc,
    pub kappa_type: KappaType,
    pub ellis: EllisModel,
    /// Absent for a generic cut.
    pub words: Option<SampleWords>,
}

pub fn classification_report(params: &SturmianParams, window: usize) -> Result<ClassificationReport> {
    let words = match params.kappa {
        Kappa::Generic => None,
        Kappa::Combination { .. } => {
            let range = 0..window as i64;
            let zero = QuadraticNumber::zero();
            Some(SampleWords {
                upper: generate_word(params, zero, Boundary::Upper, range.clone())?,
                lower: generate_word(params, zero, Boundary::Lower, range)?,
            })
        }
    };
    Ok(ClassificationReport {
        params: params.to_doc(),
        kappa_type: classify_kappa(params),
        ellis: ellis_model(params),
        words,
    })
}

/// Verdicts for factor maps in both directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorReport {
    pub first_type: KappaType,
    pub second_type: KappaType,
    pub first_onto_second: FactorVerdict,
    pub second_onto_first: FactorVerdict,
}

pub fn factor_report(first: &SturmianParams, second: &SturmianParams) -> FactorReport {
    FactorReport {
        first_type: classify_kappa(first),
        second_type: classify_kappa(second),
        first_onto_second: factor_verdict(first, second),
        second_onto_first: factor_verdict(second, first),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `{(1 - √5)/2} = (3 - √5)/2`.
    fn alpha() -> QuadraticNumber {
        QuadraticNumber::new(3, -1, 2, 5).unwrap()
    }

    fn params(m: i64, n: i64, k: i64) -> SturmianParams {
        SturmianParams::new(alpha(), Kappa::Combination { m, n, k }).unwrap()
    }

    #[test]
    fn kappa_types() {
        assert_eq!(classify_kappa(&params(1, 0, 1)), KappaType::Type1);
        assert_eq!(classify_kappa(&params(1, 1, 2)), KappaType::Type2);
        assert_eq!(classify_kappa(&params(1, 0, 3)), KappaType::Type3);
        assert_eq!(classify_kappa(&params(2, 4, 4)), KappaType::Type2);
        let generic = SturmianParams::new(alpha(), Kappa::Generic).unwrap();
        assert_eq!(classify_kappa(&generic), KappaType::Type3);
    }

    #[test]
    fn fibonacci_coding() {
        let p = params(1, 0, 1);
        let fib = crate::subst::Substitution::parse("ab", &["ab", "a"]).unwrap();
        let mut word = vec![0];
        while word.len() < 100 {
            word = fib.apply(&word);
        }
        let expected = fib.render_word(&word[..100]);
        let phi = alpha() + alpha();
        let swapped: String = generate_word(&p, phi, Boundary::Upper, 0..100)
            .unwrap()
            .chars()
            .map(|c| if c == 'a' { 'b' } else { 'a' })
            .collect();
        assert_eq!(swapped, expected);
    }

    #[test]
    fn boundary_conventions() {
        let p = params(1, 0, 1);
        let zero = QuadraticNumber::zero();
        assert_eq!(generate_word(&p, zero, Boundary::Upper, 0..1).unwrap(), "a");
        assert_eq!(generate_word(&p, zero, Boundary::Lower, 0..1).unwrap(), "b");
        let half = QuadraticNumber::rational(1, 2);
        assert_eq!(
            generate_word(&p, half, Boundary::Upper, -50..50).unwrap(),
            generate_word(&p, half, Boundary::Lower, -50..50).unwrap()
        );
    }

    #[test]
    fn generation_errors() {
        let generic = SturmianParams::new(alpha(), Kappa::Generic).unwrap();
        assert_eq!(
            generate_word(&generic, QuadraticNumber::zero(), Boundary::Upper, 0..3),
            Err(Error::GenericCut)
        );
        let s2 = QuadraticNumber::new(0, 1, 1, 2).unwrap();
        assert_eq!(
            generate_word(&params(1, 0, 1), s2, Boundary::Upper, 0..3),
            Err(Error::FieldMismatch(5, 2))
        );
    }

    #[test]
    fn models() {
        let a = ellis_model(&params(1, 0, 1));
        let b = ellis_model(&params(1, 0, 3));
        assert_eq!(a.idempotent_count, 2);
        assert_eq!(a, b);
        let cover = ellis_model_of_cover(&params(1, 0, 1), 2);
        assert_eq!(
            QuadraticNumber::from_doc(&cover.rotation).unwrap(),
            alpha() / QuadraticNumber::integer(2)
        );
    }

    #[test]
    fn limits() {
        let z = QuadraticNumber::rational(1, 3);
        assert_eq!(evaluate_limit(SequenceDescriptor::Bounded(3)), EllisElement::Shift(3));
        assert_eq!(
            evaluate_limit(SequenceDescriptor::ApproachFromAbove(z)),
            EllisElement::Pair(Idempotent::Plus, z)
        );
        assert_eq!(
            evaluate_limit(SequenceDescriptor::ApproachFromBelow(z)),
            EllisElement::Pair(Idempotent::Minus, z)
        );
    }

    #[test]
    fn verdicts() {
        use FactorVerdict::*;
        let t1 = params(1, 0, 1);
        let t2 = params(1, 1, 2);
        let t3 = params(1, 0, 3);
        assert_eq!(factor_verdict(&t2, &params(3, 0, 2)), FactorExists);
        assert_eq!(factor_verdict(&t3, &t1), FactorExists);
        assert_eq!(factor_verdict(&t1, &t3), NoConclusion);
        let other = SturmianParams::new(
            QuadraticNumber::new(0, 1, 2, 5).unwrap(),
            Kappa::Combination { m: 1, n: 0, k: 1 },
        )
        .unwrap();
        assert_eq!(factor_verdict(&t1, &other), DifferentRotation);
    }

    #[test]
    fn reports() {
        let report = classification_report(&params(1, 0, 1), 8).unwrap();
        assert_eq!(report.kappa_type, KappaType::Type1);
        let words = report.words.unwrap();
        assert_eq!(words.upper.len(), 8);
        // the orbit meets both cut points, at n = 0 and n = 1
        assert_eq!(&words.upper[..2], "ab");
        assert_eq!(&words.lower[..2], "ba");
        assert_eq!(&words.upper[2..], &words.lower[2..]);
        let generic = SturmianParams::new(alpha(), Kappa::Generic).unwrap();
        assert!(classification_report(&generic, 8).unwrap().words.is_none());
        let both = factor_report(&params(1, 0, 3), &params(1, 0, 1));
        assert_eq!(both.first_onto_second, FactorVerdict::FactorExists);
        assert_eq!(both.second_onto_first, FactorVerdict::NoConclusion);
    }

    #[test]
    fn params_documents() {
        let json = r#"{"alpha": {"p": 3, "q": -1, "r": 2, "d": 5}, "kappa": {"m": 1, "n": 1, "k": 2}}"#;
        let p = SturmianParams::from_json(json).unwrap();
        assert_eq!(p, params(1, 1, 2));
        let generic = r#"{"alpha": {"p": 3, "q": -1, "r": 2, "d": 5}, "kappa": "generic"}"#;
        assert_eq!(SturmianParams::from_json(generic).unwrap().kappa(), Kappa::Generic);
        assert!(SturmianParams::from_json(r#"{"alpha": {"p": 1, "q": 0, "r": 2, "d": 5}, "kappa": "generic"}"#).is_err());
        assert!(SturmianParams::from_json(r#"{"alpha": {"p": 3, "q": -1, "r": 2, "d": 5}, "kappa": "other"}"#).is_err());
    }
}
