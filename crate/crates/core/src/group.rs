//! Accumulation operations.
//!
//! Every structure in this crate folds elements with a [`Group`]: an
//! associative `combine` with a two-sided identity and two-sided inverses.
//! `combine` is *not* assumed to be commutative, and the left operand always
//! stays on the left.
//!
//! Four instances are provided, selectable at runtime through [`AnyGroup`]
//! and its string ids:
//!
//! | id          | group                                   | commutative |
//! |-------------|-----------------------------------------|-------------|
//! | `wrap-add`  | `i64` addition with wraparound          | yes         |
//! | `mod-add:p` | residues `0..p` under addition mod `p`  | yes         |
//! | `perm:k`    | permutations of `0..k` under composition| for `k < 3` |
//! | `gl2:p`     | invertible 2x2 matrices mod a prime `p` | no          |

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};

/// A group used as the accumulation operation.
///
/// Implementations must satisfy the group axioms exactly; all instances here
/// are discrete so equality is structural.
pub trait Group {
    type Element: Clone + PartialEq + fmt::Debug;

    /// The product `a · b`, with `a` on the left.
    fn combine(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;

    fn identity(&self) -> Self::Element;

    /// The two-sided inverse of `a`.
    fn invert(&self, a: &Self::Element) -> Self::Element;

    /// Checks that `a` belongs to this group instance.
    fn validate(&self, a: &Self::Element) -> Result<()>;

    /// Draws a uniformly distributed valid element.
    fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Element;

    fn element_eq(&self, a: &Self::Element, b: &Self::Element) -> bool {
        a == b
    }

    /// Like [`Group::combine`], but rejects operands that do not belong to
    /// this instance instead of producing garbage or panicking.
    fn try_combine(&self, a: &Self::Element, b: &Self::Element) -> Result<Self::Element> {
        self.validate(a)
            .and_then(|_| self.validate(b))
            .map_err(|e| Error::OperandMismatch(e.to_string()))?;
        Ok(self.combine(a, b))
    }
}

/// Samples up to `trials` random pairs and returns the first one that does
/// not commute.
pub fn find_noncommuting_pair<G, R>(
    group: &G,
    rng: &mut R,
    trials: usize,
) -> Option<(G::Element, G::Element)>
where
    G: Group,
    R: Rng + ?Sized,
{
    (0..trials).find_map(|_| {
        let a = group.random_element(rng);
        let b = group.random_element(rng);
        let ab = group.combine(&a, &b);
        let ba = group.combine(&b, &a);
        (!group.element_eq(&ab, &ba)).then_some((a, b))
    })
}

/// Machine integers under addition with silent wraparound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct WrappingAdd;

impl Group for WrappingAdd {
    type Element = i64;

    #[inline]
    fn combine(&self, a: &i64, b: &i64) -> i64 {
        a.wrapping_add(*b)
    }

    #[inline]
    fn identity(&self) -> i64 {
        0
    }

    #[inline]
    fn invert(&self, a: &i64) -> i64 {
        a.wrapping_neg()
    }

    fn validate(&self, _: &i64) -> Result<()> {
        Ok(())
    }

    fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> i64 {
        rng.gen()
    }
}

/// Residues `0..modulus` under addition modulo `modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModAdd {
    modulus: u64,
}

impl ModAdd {
    pub fn new(modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidGroup(
                "mod-add modulus must be at least 1".into(),
            ));
        }
        Ok(Self { modulus })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

impl Group for ModAdd {
    type Element = u64;

    fn combine(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.modulus as u128) as u64
    }

    fn identity(&self) -> u64 {
        0
    }

    fn invert(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    fn validate(&self, a: &u64) -> Result<()> {
        if *a < self.modulus {
            Ok(())
        } else {
            Err(Error::InvalidElement(format!(
                "residue {a} is not below modulus {}",
                self.modulus
            )))
        }
    }

    fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.modulus)
    }
}

/// A bijection on `0..k`, stored as its image array: `x` maps to `self[x]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Box<[u32]>);

impl Permutation {
    /// Builds a permutation from its image array, rejecting anything that is
    /// not a bijection on `0..image.len()`.
    pub fn new(image: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; image.len()];
        for &x in &image {
            match seen.get_mut(x as usize) {
                Some(slot) if !*slot => *slot = true,
                Some(_) => {
                    return Err(Error::InvalidElement(format!(
                        "image {image:?} repeats {x}"
                    )))
                }
                None => {
                    return Err(Error::InvalidElement(format!(
                        "image {image:?} contains {x}, outside 0..{}",
                        image.len()
                    )))
                }
            }
        }
        Ok(Self(image.into_boxed_slice()))
    }

    pub fn identity(degree: usize) -> Self {
        Self((0..degree as u32).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self) -> &[u32] {
        &self.0
    }
}

/// The symmetric group on `degree` points.
///
/// The product `a · b` applies `a` first, then `b`: `(a · b)[x] = b[a[x]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymmetricGroup {
    degree: usize,
}

impl SymmetricGroup {
    pub fn new(degree: usize) -> Result<Self> {
        if degree == 0 || degree > u32::MAX as usize {
            return Err(Error::InvalidGroup(format!(
                "permutation degree {degree} is not in 1..=2^32-1"
            )));
        }
        Ok(Self { degree })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
}

impl Group for SymmetricGroup {
    type Element = Permutation;

    fn combine(&self, a: &Permutation, b: &Permutation) -> Permutation {
        Permutation(a.0.iter().map(|&x| b.0[x as usize]).collect())
    }

    fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    fn invert(&self, a: &Permutation) -> Permutation {
        let mut inv = vec![0u32; a.degree()];
        for (x, &y) in a.0.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        Permutation(inv.into_boxed_slice())
    }

    fn validate(&self, a: &Permutation) -> Result<()> {
        if a.degree() != self.degree {
            return Err(Error::InvalidElement(format!(
                "permutation of degree {} used in perm:{}",
                a.degree(),
                self.degree
            )));
        }
        Ok(())
    }

    fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut image: Vec<u32> = (0..self.degree as u32).collect();
        // Fisher-Yates
        for i in (1..image.len()).rev() {
            let j = rng.gen_range(0..=i);
            image.swap(i, j);
        }
        Permutation(image.into_boxed_slice())
    }
}

/// A 2x2 matrix of residues, row-major: `[[a, b], [c, d]]` is `[a, b, c, d]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat2(pub [u64; 4]);

/// Invertible 2x2 matrices over the prime field `Z/p` under multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gl2 {
    prime: u64,
}

impl Gl2 {
    /// `prime` must be a prime below 2^32.
    pub fn new(prime: u64) -> Result<Self> {
        if prime >= 1 << 32 {
            return Err(Error::InvalidGroup(format!(
                "gl2 modulus {prime} must be below 2^32"
            )));
        }
        if !is_prime(prime) {
            return Err(Error::InvalidGroup(format!(
                "gl2 modulus {prime} is not prime"
            )));
        }
        Ok(Self { prime })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// Validated construction from row-major entries.
    pub fn element(&self, entries: [u64; 4]) -> Result<Mat2> {
        let m = Mat2(entries);
        self.validate(&m)?;
        Ok(m)
    }

    pub fn determinant(&self, m: &Mat2) -> u64 {
        let p = self.prime;
        let [a, b, c, d] = m.0;
        (a * d % p + p - b * c % p) % p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let p = self.prime;
        let mut acc = 1 % p;
        base %= p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Group for Gl2 {
    type Element = Mat2;

    fn combine(&self, x: &Mat2, y: &Mat2) -> Mat2 {
        let p = self.prime;
        let [a, b, c, d] = x.0;
        let [e, f, g, h] = y.0;
        Mat2([
            (a * e % p + b * g % p) % p,
            (a * f % p + b * h % p) % p,
            (c * e % p + d * g % p) % p,
            (c * f % p + d * h % p) % p,
        ])
    }

    fn identity(&self) -> Mat2 {
        Mat2([1, 0, 0, 1])
    }

    fn invert(&self, m: &Mat2) -> Mat2 {
        let p = self.prime;
        let det_inv = self.pow(self.determinant(m), p - 2);
        let [a, b, c, d] = m.0;
        let neg = |v: u64| (p - v % p) % p;
        Mat2([
            d * det_inv % p,
            neg(b) * det_inv % p,
            neg(c) * det_inv % p,
            a * det_inv % p,
        ])
    }

    fn validate(&self, m: &Mat2) -> Result<()> {
        if let Some(v) = m.0.iter().find(|&&v| v >= self.prime) {
            return Err(Error::InvalidElement(format!(
                "matrix entry {v} is not below {}",
                self.prime
            )));
        }
        if self.determinant(m) == 0 {
            return Err(Error::InvalidElement(format!(
                "matrix {:?} is singular mod {}",
                m.0, self.prime
            )));
        }
        Ok(())
    }

    fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Mat2 {
        loop {
            let m = Mat2(std::array::from_fn(|_| rng.gen_range(0..self.prime)));
            if self.determinant(&m) != 0 {
                return m;
            }
        }
    }
}

/// A group instance chosen at runtime by its string id.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnyGroup {
    WrappingAdd(WrappingAdd),
    ModAdd(ModAdd),
    Perm(SymmetricGroup),
    Gl2(Gl2),
}

/// An element of an [`AnyGroup`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AnyElement {
    Int(i64),
    Residue(u64),
    Perm(Permutation),
    Mat(Mat2),
}

impl FromStr for AnyGroup {
    type Err = Error;

    fn from_str(id: &str) -> Result<Self> {
        let id = id.trim();
        let (kind, param) = match id.split_once(':') {
            Some((kind, param)) => (kind, Some(param)),
            None => (id, None),
        };
        let number = |p: Option<&str>| -> Result<u64> {
            p.ok_or_else(|| Error::UnknownGroup(id.to_string()))?
                .parse::<u64>()
                .map_err(|_| Error::UnknownGroup(id.to_string()))
        };
        match kind {
            "wrap-add" if param.is_none() => Ok(AnyGroup::WrappingAdd(WrappingAdd)),
            "mod-add" => Ok(AnyGroup::ModAdd(ModAdd::new(number(param)?)?)),
            "perm" => Ok(AnyGroup::Perm(
                SymmetricGroup::new(number(param)? as usize)?,
            )),
            "gl2" => Ok(AnyGroup::Gl2(Gl2::new(number(param)?)?)),
            _ => Err(Error::UnknownGroup(id.to_string())),
        }
    }
}

impl fmt::Display for AnyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyGroup::WrappingAdd(_) => write!(f, "wrap-add"),
            AnyGroup::ModAdd(g) => write!(f, "mod-add:{}", g.modulus()),
            AnyGroup::Perm(g) => write!(f, "perm:{}", g.degree()),
            AnyGroup::Gl2(g) => write!(f, "gl2:{}", g.prime()),
        }
    }
}

impl fmt::Display for AnyElement {
    /// Integers print bare; permutations and matrices print as
    /// comma-separated tuples, e.g. `(2,0,1)` or `(1,4,0,1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn tuple(f: &mut fmt::Formatter<'_>, items: impl Iterator<Item = u64>) -> fmt::Result {
            f.write_str("(")?;
            for (i, v) in items.enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str(")")
        }
        match self {
            AnyElement::Int(v) => write!(f, "{v}"),
            AnyElement::Residue(v) => write!(f, "{v}"),
            AnyElement::Perm(p) => tuple(f, p.image().iter().map(|&x| x as u64)),
            AnyElement::Mat(m) => tuple(f, m.0.iter().copied()),
        }
    }
}

impl AnyGroup {
    /// Parses and validates an element literal for this group.
    pub fn parse_element(&self, literal: &str) -> Result<AnyElement> {
        let fail = |reason: String| Error::ParseElement {
            literal: literal.to_string(),
            reason,
        };
        let text = literal.trim();
        let element = match self {
            AnyGroup::WrappingAdd(_) => {
                AnyElement::Int(text.parse::<i64>().map_err(|e| fail(e.to_string()))?)
            }
            AnyGroup::ModAdd(_) => {
                AnyElement::Residue(text.parse::<u64>().map_err(|e| fail(e.to_string()))?)
            }
            AnyGroup::Perm(_) => {
                let items = parse_tuple(text).map_err(fail)?;
                let image = items
                    .into_iter()
                    .map(|v| u32::try_from(v).map_err(|_| fail(format!("{v} is too large"))))
                    .collect::<Result<Vec<_>>>()?;
                AnyElement::Perm(Permutation::new(image).map_err(|e| fail(e.to_string()))?)
            }
            AnyGroup::Gl2(_) => {
                let items = parse_tuple(text).map_err(fail)?;
                let entries: [u64; 4] = items.try_into().map_err(|v: Vec<u64>| {
                    fail(format!("expected 4 entries, found {}", v.len()))
                })?;
                AnyElement::Mat(Mat2(entries))
            }
        };
        self.validate(&element).map_err(|e| fail(e.to_string()))?;
        Ok(element)
    }

    /// `false` only when a non-commuting pair was found among `trials`
    /// random samples drawn from a fixed seed.
    pub fn passes_commutativity_check(&self, trials: usize) -> bool {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(COMMUTATIVITY_SEED);
        find_noncommuting_pair(self, &mut rng, trials).is_none()
    }
}

pub(crate) const COMMUTATIVITY_SEED: u64 = 0x5357_7472_6565;

fn parse_tuple(text: &str) -> std::result::Result<Vec<u64>, String> {
    let inner = text
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| "expected a parenthesised tuple".to_string())?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|item| {
            item.trim()
                .parse::<u64>()
                .map_err(|e| format!("`{item}`: {e}"))
        })
        .collect()
}

fn mismatch(group: &AnyGroup, element: &AnyElement) -> Error {
    Error::InvalidElement(format!("{element} is not an element of {group}"))
}

impl Group for AnyGroup {
    type Element = AnyElement;

    fn combine(&self, a: &AnyElement, b: &AnyElement) -> AnyElement {
        use AnyElement as E;
        match (self, a, b) {
            (AnyGroup::WrappingAdd(g), E::Int(x), E::Int(y)) => E::Int(g.combine(x, y)),
            (AnyGroup::ModAdd(g), E::Residue(x), E::Residue(y)) => E::Residue(g.combine(x, y)),
            (AnyGroup::Perm(g), E::Perm(x), E::Perm(y)) => E::Perm(g.combine(x, y)),
            (AnyGroup::Gl2(g), E::Mat(x), E::Mat(y)) => E::Mat(g.combine(x, y)),
            _ => panic!("operands {a} and {b} do not belong to {self}; use try_combine"),
        }
    }

    fn identity(&self) -> AnyElement {
        match self {
            AnyGroup::WrappingAdd(g) => AnyElement::Int(g.identity()),
            AnyGroup::ModAdd(g) => AnyElement::Residue(g.identity()),
            AnyGroup::Perm(g) => AnyElement::Perm(g.identity()),
            AnyGroup::Gl2(g) => AnyElement::Mat(g.identity()),
        }
    }

    fn invert(&self, a: &AnyElement) -> AnyElement {
        use AnyElement as E;
        match (self, a) {
            (AnyGroup::WrappingAdd(g), E::Int(x)) => E::Int(g.invert(x)),
            (AnyGroup::ModAdd(g), E::Residue(x)) => E::Residue(g.invert(x)),
            (AnyGroup::Perm(g), E::Perm(x)) => E::Perm(g.invert(x)),
            (AnyGroup::Gl2(g), E::Mat(x)) => E::Mat(g.invert(x)),
            _ => panic!("operand {a} does not belong to {self}"),
        }
    }

    fn validate(&self, a: &AnyElement) -> Result<()> {
        use AnyElement as E;
        match (self, a) {
            (AnyGroup::WrappingAdd(g), E::Int(x)) => g.validate(x),
            (AnyGroup::ModAdd(g), E::Residue(x)) => g.validate(x),
            (AnyGroup::Perm(g), E::Perm(x)) => g.validate(x),
            (AnyGroup::Gl2(g), E::Mat(x)) => g.validate(x),
            _ => Err(mismatch(self, a)),
        }
    }

    fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> AnyElement {
        match self {
            AnyGroup::WrappingAdd(g) => AnyElement::Int(g.random_element(rng)),
            AnyGroup::ModAdd(g) => AnyElement::Residue(g.random_element(rng)),
            AnyGroup::Perm(g) => AnyElement::Perm(g.random_element(rng)),
            AnyGroup::Gl2(g) => AnyElement::Mat(g.random_element(rng)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn perm(image: &[u32]) -> Permutation {
        Permutation::new(image.to_vec()).unwrap()
    }

    fn check_axioms<G: Group>(g: &G, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let id = g.identity();
        for _ in 0..1000 {
            let a = g.random_element(&mut rng);
            let b = g.random_element(&mut rng);
            let c = g.random_element(&mut rng);
            g.validate(&a).unwrap();
            assert_eq!(
                g.combine(&g.combine(&a, &b), &c),
                g.combine(&a, &g.combine(&b, &c))
            );
            assert_eq!(g.combine(&id, &a), a);
            assert_eq!(g.combine(&a, &id), a);
            let inv = g.invert(&a);
            assert_eq!(g.combine(&inv, &a), id);
            assert_eq!(g.combine(&a, &inv), id);
        }
    }

    #[test]
    fn group_axioms_hold() {
        check_axioms(&WrappingAdd, 1);
        check_axioms(&ModAdd::new(7).unwrap(), 2);
        check_axioms(&ModAdd::new(1).unwrap(), 3);
        check_axioms(&SymmetricGroup::new(8).unwrap(), 4);
        check_axioms(&SymmetricGroup::new(1).unwrap(), 5);
        check_axioms(&Gl2::new(251).unwrap(), 6);
        check_axioms(&Gl2::new(2).unwrap(), 7);
        check_axioms(&"gl2:5".parse::<AnyGroup>().unwrap(), 8);
    }

    #[test]
    fn combine_examples() {
        assert_eq!(WrappingAdd.combine(&9, &27), 36);
        assert_eq!(WrappingAdd.combine(&i64::MAX, &1), i64::MIN);
        assert_eq!(ModAdd::new(7).unwrap().combine(&5, &4), 2);
        let s3 = SymmetricGroup::new(3).unwrap();
        assert_eq!(
            s3.combine(&perm(&[1, 2, 0]), &perm(&[1, 2, 0])),
            perm(&[2, 0, 1])
        );
    }

    #[test]
    fn composition_applies_left_operand_first() {
        let s3 = SymmetricGroup::new(3).unwrap();
        let swap01 = perm(&[1, 0, 2]);
        let swap12 = perm(&[0, 2, 1]);
        // 0 -> 1 -> 2, 1 -> 0 -> 0, 2 -> 2 -> 1
        assert_eq!(s3.combine(&swap01, &swap12), perm(&[2, 0, 1]));
        assert_eq!(s3.combine(&swap12, &swap01), perm(&[1, 2, 0]));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(WrappingAdd.invert(&27), -27);
        let s3 = SymmetricGroup::new(3).unwrap();
        assert_eq!(s3.invert(&perm(&[1, 2, 0])), perm(&[2, 0, 1]));
        let g = Gl2::new(5).unwrap();
        let m = g.element([1, 1, 0, 1]).unwrap();
        let inv = g.invert(&m);
        assert_eq!(inv, Mat2([1, 4, 0, 1]));
        assert_eq!(g.combine(&m, &inv), g.identity());
        assert_eq!(ModAdd::new(7).unwrap().invert(&0), 0);
    }

    #[test]
    fn identity_examples() {
        assert_eq!(WrappingAdd.identity(), 0);
        assert_eq!(
            SymmetricGroup::new(4).unwrap().identity(),
            perm(&[0, 1, 2, 3])
        );
        assert_eq!(Gl2::new(7).unwrap().identity(), Mat2([1, 0, 0, 1]));
    }

    #[test]
    fn random_elements_are_deterministic_and_valid() {
        let s8 = SymmetricGroup::new(8).unwrap();
        let draw = || s8.random_element(&mut ChaCha8Rng::seed_from_u64(42));
        assert_eq!(draw(), draw());

        let g = Gl2::new(251).unwrap();
        let m10 = ModAdd::new(10).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..500 {
            assert_ne!(g.determinant(&g.random_element(&mut rng)), 0);
            assert!(m10.random_element(&mut rng) < 10);
        }
    }

    #[test]
    fn noncommutativity_witness_found_quickly() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for k in 3..=8 {
            let g = SymmetricGroup::new(k).unwrap();
            assert!(
                find_noncommuting_pair(&g, &mut rng, 100).is_some(),
                "perm:{k}"
            );
        }
        for p in [2, 5, 251] {
            let g = Gl2::new(p).unwrap();
            assert!(
                find_noncommuting_pair(&g, &mut rng, 100).is_some(),
                "gl2:{p}"
            );
        }
    }

    #[test]
    fn additive_groups_commute() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        assert!(find_noncommuting_pair(&WrappingAdd, &mut rng, 1000).is_none());
        assert!(find_noncommuting_pair(&ModAdd::new(97).unwrap(), &mut rng, 1000).is_none());
        assert!(find_noncommuting_pair(&SymmetricGroup::new(2).unwrap(), &mut rng, 1000).is_none());
        assert!(AnyGroup::WrappingAdd(WrappingAdd).passes_commutativity_check(100));
        assert!(!"perm:3"
            .parse::<AnyGroup>()
            .unwrap()
            .passes_commutativity_check(100));
    }

    #[test]
    fn invalid_construction_is_rejected() {
        assert!(Gl2::new(4).is_err());
        assert!(Gl2::new(1).is_err());
        assert!(ModAdd::new(0).is_err());
        assert!(SymmetricGroup::new(0).is_err());
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::new(vec![0, 3, 1]).is_err());
        let g = Gl2::new(5).unwrap();
        assert!(g.element([1, 2, 2, 4]).is_err());
        assert!(g.element([5, 0, 0, 1]).is_err());
    }

    #[test]
    fn try_combine_rejects_mismatched_operands() {
        let s = SymmetricGroup::new(3).unwrap();
        let err = s
            .try_combine(&perm(&[0, 1, 2]), &perm(&[0, 1]))
            .unwrap_err();
        assert!(matches!(err, Error::OperandMismatch(_)));
        let any: AnyGroup = "wrap-add".parse().unwrap();
        assert!(any
            .try_combine(&AnyElement::Int(1), &AnyElement::Residue(1))
            .is_err());
    }

    #[test]
    fn group_ids_round_trip() {
        for id in ["wrap-add", "mod-add:7", "perm:8", "gl2:251"] {
            let g: AnyGroup = id.parse().unwrap();
            assert_eq!(g.to_string(), id);
        }
        for bad in [
            "",
            "wrap-add:3",
            "mod-add",
            "perm:x",
            "gl2:9",
            "matrix:5",
            "perm:0",
        ] {
            assert!(bad.parse::<AnyGroup>().is_err(), "{bad}");
        }
    }

    #[test]
    fn element_literals() {
        let g: AnyGroup = "perm:3".parse().unwrap();
        let e = g.parse_element("(2,0,1)").unwrap();
        assert_eq!(e.to_string(), "(2,0,1)");
        assert!(g.parse_element("(2,0)").is_err());
        assert!(g.parse_element("2,0,1").is_err());

        let m: AnyGroup = "gl2:5".parse().unwrap();
        assert_eq!(
            m.parse_element("(1, 4, 0, 1)").unwrap(),
            AnyElement::Mat(Mat2([1, 4, 0, 1]))
        );
        assert!(m.parse_element("(0,0,0,0)").is_err());

        let w: AnyGroup = "wrap-add".parse().unwrap();
        assert_eq!(w.parse_element("-27").unwrap(), AnyElement::Int(-27));
        let r: AnyGroup = "mod-add:10".parse().unwrap();
        assert!(r.parse_element("10").is_err());
        assert_eq!(r.parse_element("9").unwrap(), AnyElement::Residue(9));
    }
}
