//! Exact arithmetic on permutations of `{1, .., degree}` together with
//! parsing and formatting of cycle notation.
//!
//! Conventions used throughout the crate:
//!
//! * points are 1-based in every public interface;
//! * composition is the right action, `(x)(pq) = ((x)p)q`, so
//!   [`Permutation::compose`] applies the receiver first;
//! * conjugation is `p^h = h^-1 p h`;
//! * the canonical cycle form writes each cycle with its smallest point
//!   first, sorts cycles by first point, omits fixed points, and renders
//!   the identity as `()`.

use std::fmt;

use thiserror::Error;

/// Errors from building a permutation out of raw data or cycle text.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("unexpected character {found:?} at byte {at}")]
    Unexpected { found: char, at: usize },
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("empty input")]
    Empty,
    #[error("point {0} is outside 1..={1}")]
    OutOfRange(usize, usize),
    #[error("point {0} appears more than once")]
    Repeated(usize),
    #[error("a cycle needs at least two points")]
    ShortCycle,
    #[error("image table of length {0} does not describe a bijection")]
    NotABijection(usize),
}

/// A permutation of `{1, .., degree}` stored as an image table.
///
/// Equality, hashing and ordering compare image tables, so two values are
/// equal exactly when they have the same degree and move every point the
/// same way.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // images[i] is the 0-based image of the 0-based point i.
    images: Box<[u16]>,
}

impl Permutation {
    /// The identity permutation of the given degree (at least 1).
    pub fn identity(degree: usize) -> Self {
        assert!(degree >= 1, "degree must be at least 1");
        assert!(degree <= u16::MAX as usize, "degree too large");
        Permutation {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds a permutation from a 1-based image table: `images[i]` is the
    /// image of point `i + 1`.
    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        let degree = images.len();
        assert!(degree >= 1, "degree must be at least 1");
        assert!(degree <= u16::MAX as usize, "degree too large");
        let mut table = vec![0u16; degree];
        let mut seen = vec![false; degree];
        for (i, &im) in images.iter().enumerate() {
            if im == 0 || im > degree {
                return Err(PermError::OutOfRange(im, degree));
            }
            if seen[im - 1] {
                return Err(PermError::NotABijection(degree));
            }
            seen[im - 1] = true;
            table[i] = (im - 1) as u16;
        }
        Ok(Permutation {
            images: table.into_boxed_slice(),
        })
    }

    /// Builds a permutation of the given degree out of disjoint cycles of
    /// 1-based points.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self, PermError> {
        let mut p = Permutation::identity(degree);
        let mut seen = vec![false; degree];
        for cycle in cycles {
            if cycle.len() < 2 {
                return Err(PermError::ShortCycle);
            }
            for &pt in *cycle {
                if pt == 0 || pt > degree {
                    return Err(PermError::OutOfRange(pt, degree));
                }
                if seen[pt - 1] {
                    return Err(PermError::Repeated(pt));
                }
                seen[pt - 1] = true;
            }
            for i in 0..cycle.len() {
                let from = cycle[i] - 1;
                let to = cycle[(i + 1) % cycle.len()] - 1;
                p.images[from] = to as u16;
            }
        }
        Ok(p)
    }

    /// The transposition `(a, b)` inside `Sym(degree)`.
    pub fn transposition(degree: usize, a: usize, b: usize) -> Self {
        assert!(a != b, "a transposition needs two distinct points");
        Permutation::from_cycles(degree, &[&[a, b]]).expect("valid transposition")
    }

    /// Parses cycle notation, e.g. `"(1,3)(2,4)"` or `"()"` for the
    /// identity. Whitespace between tokens is ignored.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self, PermError> {
        assert!(degree >= 1, "degree must be at least 1");
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut chars = text.char_indices().peekable();

        let skip_ws = |chars: &mut std::iter::Peekable<std::str::CharIndices>| {
            while let Some(&(_, c)) = chars.peek() {
                if c.is_whitespace() {
                    chars.next();
                } else {
                    break;
                }
            }
        };

        skip_ws(&mut chars);
        if chars.peek().is_none() {
            return Err(PermError::Empty);
        }
        while chars.peek().is_some() {
            match chars.next() {
                Some((_, '(')) => {}
                Some((at, found)) => return Err(PermError::Unexpected { found, at }),
                None => return Err(PermError::UnexpectedEnd),
            }
            skip_ws(&mut chars);
            // "()" denotes the identity and must stand alone.
            if let Some(&(at, ')')) = chars.peek() {
                chars.next();
                skip_ws(&mut chars);
                if cycles.is_empty() && chars.peek().is_none() {
                    return Ok(Permutation::identity(degree));
                }
                return Err(PermError::Unexpected { found: ')', at });
            }
            let mut cycle = Vec::new();
            loop {
                skip_ws(&mut chars);
                let mut value: usize = 0;
                let mut digits = 0;
                while let Some(&(_, c)) = chars.peek() {
                    if let Some(d) = c.to_digit(10) {
                        value = value * 10 + d as usize;
                        digits += 1;
                        if value > u16::MAX as usize {
                            return Err(PermError::OutOfRange(value, degree));
                        }
                        chars.next();
                    } else {
                        break;
                    }
                }
                if digits == 0 {
                    return match chars.next() {
                        Some((at, found)) => Err(PermError::Unexpected { found, at }),
                        None => Err(PermError::UnexpectedEnd),
                    };
                }
                cycle.push(value);
                skip_ws(&mut chars);
                match chars.next() {
                    Some((_, ',')) => continue,
                    Some((_, ')')) => break,
                    Some((at, found)) => return Err(PermError::Unexpected { found, at }),
                    None => return Err(PermError::UnexpectedEnd),
                }
            }
            if cycle.len() < 2 {
                return Err(PermError::ShortCycle);
            }
            cycles.push(cycle);
            skip_ws(&mut chars);
        }
        let borrowed: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Permutation::from_cycles(degree, &borrowed)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 1-based point.
    pub fn apply(&self, point: usize) -> usize {
        assert!(
            point >= 1 && point <= self.images.len(),
            "point {point} is outside 1..={}",
            self.images.len()
        );
        self.images[point - 1] as usize + 1
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| im as usize == i)
    }

    /// True when the permutation has order exactly 2.
    pub fn is_involution(&self) -> bool {
        !self.is_identity()
            && self
                .images
                .iter()
                .enumerate()
                .all(|(i, &im)| self.images[im as usize] as usize == i)
    }

    /// `self` followed by `other`: `(x)(pq) = ((x)p)q`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: self
                .images
                .iter()
                .map(|&im| other.images[im as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0u16; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im as usize] = i as u16;
        }
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    /// `k`-th power, with negative `k` meaning powers of the inverse.
    pub fn power(&self, k: i64) -> Self {
        let mut base = if k < 0 { self.inverse() } else { self.clone() };
        let mut exponent = k.unsigned_abs();
        let mut result = Permutation::identity(self.degree());
        while exponent > 0 {
            if exponent & 1 == 1 {
                result = result.compose(&base);
            }
            base = base.compose(&base);
            exponent >>= 1;
        }
        result
    }

    /// Conjugate `h^-1 * self * h`.
    pub fn conjugate(&self, h: &Self) -> Self {
        h.inverse().compose(self).compose(h)
    }

    /// Commutator `self^-1 * other^-1 * self * other`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.inverse()
            .compose(&other.inverse())
            .compose(self)
            .compose(other)
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.compose(other) == other.compose(self)
    }

    /// Order of the permutation: the least common multiple of its cycle
    /// lengths.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.images.len()];
        let mut result: u64 = 1;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len: u64 = 0;
            let mut point = start;
            while !seen[point] {
                seen[point] = true;
                point = self.images[point] as usize;
                len += 1;
            }
            result = lcm(result, len);
        }
        result
    }

    /// Parity of the permutation: `true` for odd.
    pub fn is_odd(&self) -> bool {
        let mut seen = vec![false; self.images.len()];
        let mut transpositions = 0usize;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0usize;
            let mut point = start;
            while !seen[point] {
                seen[point] = true;
                point = self.images[point] as usize;
                len += 1;
            }
            transpositions += len - 1;
        }
        transpositions % 2 == 1
    }

    /// Canonical cycle decomposition (fixed points omitted).
    pub fn cycles(&self) -> CycleDecomposition {
        let mut seen = vec![false; self.images.len()];
        let mut cycles = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut point = start;
            while !seen[point] {
                seen[point] = true;
                cycle.push(point + 1);
                point = self.images[point] as usize;
            }
            cycles.push(cycle);
        }
        CycleDecomposition {
            degree: self.images.len(),
            cycles,
        }
    }

    /// Canonical cycle-notation string, `()` for the identity.
    pub fn format_cycles(&self) -> String {
        self.cycles().to_string()
    }

    /// 1-based points moved by the permutation, in ascending order.
    pub fn moved_points(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &im)| im as usize != i)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &im)| im as usize != i)
            .map(|(i, _)| i + 1)
    }

    /// Product of a sequence of permutations applied left to right;
    /// the empty product is the identity.
    pub fn product<'a, I>(degree: usize, factors: I) -> Self
    where
        I: IntoIterator<Item = &'a Permutation>,
    {
        factors
            .into_iter()
            .fold(Permutation::identity(degree), |acc, f| acc.compose(f))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycles())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycles())
    }
}

/// The cycles of a permutation in canonical form: every cycle starts at its
/// smallest point, cycles are sorted by first point, fixed points omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleDecomposition {
    degree: usize,
    cycles: Vec<Vec<usize>>,
}

impl CycleDecomposition {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    /// Cycle lengths in the canonical cycle order.
    pub fn lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(|c| c.len()).collect()
    }

    /// Multiset of cycle lengths, sorted ascending; equal for conjugate
    /// permutations.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lengths = self.lengths();
        lengths.sort_unstable();
        lengths
    }

    pub fn to_permutation(&self) -> Permutation {
        let borrowed: Vec<&[usize]> = self.cycles.iter().map(|c| c.as_slice()).collect();
        Permutation::from_cycles(self.degree, &borrowed).expect("canonical cycles are disjoint")
    }
}

impl fmt::Display for CycleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in &self.cycles {
            write!(f, "(")?;
            for (i, pt) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{pt}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm(text: &str, degree: usize) -> Permutation {
        Permutation::parse_cycles(text, degree).unwrap()
    }

    #[test]
    fn identity_fixes_everything() {
        let id = Permutation::identity(6);
        for pt in 1..=6 {
            assert_eq!(id.apply(pt), pt);
        }
        assert!(id.is_identity());
        assert_eq!(id.order(), 1);
        assert_eq!(id.to_string(), "()");
    }

    #[test]
    fn composition_is_the_right_action() {
        // (1,2) then (2,3): 1 -> 2 -> 3.
        let p = perm("(1,2)", 3);
        let q = perm("(2,3)", 3);
        let pq = p.compose(&q);
        assert_eq!(pq.apply(1), 3);
        assert_eq!(pq, perm("(1,3,2)", 3));
        // The other order gives a different product.
        assert_eq!(q.compose(&p), perm("(1,2,3)", 3));
    }

    #[test]
    fn inverse_undoes() {
        let p = perm("(1,4,2)(3,5)", 5);
        assert!(p.compose(&p.inverse()).is_identity());
        assert!(p.inverse().compose(&p).is_identity());
    }

    #[test]
    fn power_handles_negative_exponents() {
        let p = perm("(1,2,3,4,5)", 5);
        assert_eq!(p.power(-1), p.inverse());
        assert_eq!(p.power(-3), p.inverse().power(3));
        assert_eq!(p.power(0), Permutation::identity(5));
        assert_eq!(p.power(5), Permutation::identity(5));
        assert_eq!(p.power(7), p.power(2));
    }

    #[test]
    fn conjugation_convention() {
        // p^h = h^-1 p h relabels points through h.
        let p = perm("(1,2)", 4);
        let h = perm("(1,3)(2,4)", 4);
        assert_eq!(p.conjugate(&h), perm("(3,4)", 4));
    }

    #[test]
    fn order_is_lcm_of_cycle_lengths() {
        assert_eq!(perm("(1,2)(3,4,5)", 5).order(), 6);
        assert_eq!(perm("(1,2,3,4)(5,6,7,8,9,10)", 10).order(), 12);
    }

    #[test]
    fn canonical_cycles_sorted_min_first() {
        let p = perm("(4,2,6)(3,1)", 6);
        assert_eq!(p.to_string(), "(1,3)(2,6,4)");
        assert_eq!(p.cycles().cycle_type(), vec![2, 3]);
    }

    #[test]
    fn parse_accepts_whitespace_between_tokens() {
        assert_eq!(perm(" ( 1 , 3 ) ( 2 , 4 ) ", 4), perm("(1,3)(2,4)", 4));
        assert_eq!(perm(" ( ) ", 4), Permutation::identity(4));
    }

    #[test]
    fn parse_rejects_malformed_text() {
        assert_eq!(
            Permutation::parse_cycles("", 4).unwrap_err(),
            PermError::Empty
        );
        assert!(matches!(
            Permutation::parse_cycles("(1,2", 4).unwrap_err(),
            PermError::UnexpectedEnd
        ));
        assert!(matches!(
            Permutation::parse_cycles("1,2)", 4).unwrap_err(),
            PermError::Unexpected { .. }
        ));
        assert_eq!(
            Permutation::parse_cycles("(1)", 4).unwrap_err(),
            PermError::ShortCycle
        );
        assert!(matches!(
            Permutation::parse_cycles("(1,2)()", 4).unwrap_err(),
            PermError::Unexpected { found: ')', .. }
        ));
    }

    #[test]
    fn parse_rejects_bad_points() {
        assert_eq!(
            Permutation::parse_cycles("(1,5)", 4).unwrap_err(),
            PermError::OutOfRange(5, 4)
        );
        assert_eq!(
            Permutation::parse_cycles("(0,1)", 4).unwrap_err(),
            PermError::OutOfRange(0, 4)
        );
        assert_eq!(
            Permutation::parse_cycles("(1,2)(2,3)", 4).unwrap_err(),
            PermError::Repeated(2)
        );
    }

    #[test]
    fn from_images_validates_bijection() {
        assert!(Permutation::from_images(&[2, 1, 3]).is_ok());
        assert_eq!(
            Permutation::from_images(&[2, 2, 3]).unwrap_err(),
            PermError::NotABijection(3)
        );
        assert_eq!(
            Permutation::from_images(&[0, 1, 2]).unwrap_err(),
            PermError::OutOfRange(0, 3)
        );
    }

    #[test]
    fn involution_means_order_two() {
        assert!(perm("(1,2)(3,4)", 4).is_involution());
        assert!(!Permutation::identity(4).is_involution());
        assert!(!perm("(1,2,3)", 4).is_involution());
    }

    #[test]
    fn parity_counts_transpositions() {
        assert!(perm("(1,2)", 4).is_odd());
        assert!(!perm("(1,2)(3,4)", 4).is_odd());
        assert!(!perm("(1,2,3)", 4).is_odd());
        assert!(!Permutation::identity(4).is_odd());
    }

    fn arb_perm(degree: usize) -> impl Strategy<Value = Permutation> {
        Just((1..=degree).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|images| Permutation::from_images(&images).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn prop_compose_associative(
            p in arb_perm(9), q in arb_perm(9), r in arb_perm(9)
        ) {
            prop_assert_eq!(p.compose(&q).compose(&r), p.compose(&q.compose(&r)));
        }

        #[test]
        fn prop_order_annihilates(p in arb_perm(10)) {
            let ord = p.order();
            prop_assert!(ord >= 1);
            prop_assert!(p.power(ord as i64).is_identity());
            for d in 1..ord {
                if ord % d == 0 {
                    prop_assert!(d == ord || !p.power(d as i64).is_identity());
                }
            }
        }

        #[test]
        fn prop_conjugation_preserves_cycle_type(p in arb_perm(10), h in arb_perm(10)) {
            prop_assert_eq!(
                p.cycles().cycle_type(),
                p.conjugate(&h).cycles().cycle_type()
            );
        }

        #[test]
        fn prop_format_parse_round_trip(p in arb_perm(12)) {
            let text = p.format_cycles();
            let back = Permutation::parse_cycles(&text, 12).unwrap();
            prop_assert_eq!(p, back);
        }

        #[test]
        fn prop_inverse_reverses_composition(p in arb_perm(8), q in arb_perm(8)) {
            prop_assert_eq!(
                p.compose(&q).inverse(),
                q.inverse().compose(&p.inverse())
            );
        }

        #[test]
        fn prop_parity_is_a_homomorphism(p in arb_perm(8), q in arb_perm(8)) {
            prop_assert_eq!(p.compose(&q).is_odd(), p.is_odd() ^ q.is_odd());
        }
    }
}
