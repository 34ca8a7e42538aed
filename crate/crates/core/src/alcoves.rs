//! The affine symmetric group acting on the stability-parameter space.
//!
//! `sigma_j` negates coordinate `j` and adds the old value to both cyclic
//! neighbours. The closed fundamental alcove is taken to be the simplex
//! `{theta : sum = 1, theta_j >= 0}`; points are reduced into it by
//! repeatedly reflecting in the first negative coordinate.
//!
//! Group elements are stored as pairs `(s, w)` of a translation charge and a
//! permutation. The pair is the affine permutation `t_s . w` of the integers
//! (bead positions of an `l`-abacus), where `w` sends runner `k` to runner
//! `w(k)` and `t_s` shifts runner `k` by `s_k` levels. A point lies in
//! `(s, w) . A_0` when `t_s . w` is the abacus image of `g^{-1}` for the
//! geometric element `g` moving `A_0` there; under this identification
//! `sigma_j` corresponds to swapping positions `x` and `x + 1` for
//! `x = -j - 1 (mod l)`, which toggles the residue-`j` boxes of a partition.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::cores_quotients::Charge;
use crate::error::{Error, Result};
use crate::partitions::TypeJ;
use crate::scalar::Scalar;

/// Reduction gives up after this many reflections.
pub const REDUCTION_FUSE: usize = 1_000_000;

/// A point of the parameter space, one coordinate per residue.
#[derive(Clone, PartialEq, Debug)]
pub struct ThetaPoint<T> {
    coords: Vec<T>,
}

impl<T: Scalar> ThetaPoint<T> {
    pub fn new(coords: Vec<T>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::InvalidParameter(
                "a parameter point needs at least two coordinates".into(),
            ));
        }
        Ok(Self { coords })
    }

    /// Builds a point and checks that the coordinates sum to one.
    pub fn on_theta1(coords: Vec<T>) -> Result<Self> {
        let point = Self::new(coords)?;
        if !point.is_normalized() {
            return Err(Error::InvalidParameter(format!(
                "coordinates {:?} do not sum to 1",
                point.coords
            )));
        }
        Ok(point)
    }

    /// The barycentre `(1/l, ..., 1/l)` of the fundamental alcove.
    pub fn barycentre(ell: usize) -> Self {
        let coord = T::one() / T::from_i64(ell as i64);
        Self {
            coords: vec![coord; ell],
        }
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn ell(&self) -> usize {
        self.coords.len()
    }

    pub fn sum(&self) -> T {
        self.coords
            .iter()
            .cloned()
            .fold(T::zero(), |acc, c| acc + c)
    }

    pub fn is_normalized(&self) -> bool {
        self.sum() == T::one()
    }

    /// Indices of zero coordinates.
    pub fn zero_set(&self) -> TypeJ {
        TypeJ::new(
            self.coords
                .iter()
                .enumerate()
                .filter(|(_, c)| c.is_zero())
                .map(|(j, _)| j),
            self.ell(),
        )
        .expect("indices are in range")
    }

    pub fn in_closed_fundamental_alcove(&self) -> bool {
        self.coords.iter().all(|c| !c.is_negative())
    }
}

impl<T: Scalar + fmt::Display> Serialize for ThetaPoint<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coords.len()))?;
        for c in &self.coords {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

impl<T: fmt::Display> fmt::Display for ThetaPoint<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({})", body.join(", "))
    }
}

/// Type B parameters `(c_s, c_t)` to `(-c_s + c_t, -c_t)`.
pub fn theta_from_c_type_b<T: Scalar>(c_s: T, c_t: T) -> ThetaPoint<T> {
    ThetaPoint {
        coords: vec![c_t.clone() - c_s, -c_t],
    }
}

/// Rescales so that the coordinates sum to one.
pub fn normalize_to_theta1<T: Scalar>(theta: &ThetaPoint<T>) -> Result<ThetaPoint<T>> {
    let total = theta.sum();
    if total.is_zero() {
        return Err(Error::NotNormalizable);
    }
    Ok(ThetaPoint {
        coords: theta
            .coords
            .iter()
            .map(|c| c.clone() / total.clone())
            .collect(),
    })
}

/// `sigma_j . theta`.
pub fn apply_generator<T: Scalar>(j: usize, theta: &ThetaPoint<T>) -> ThetaPoint<T> {
    let ell = theta.ell();
    assert!(j < ell, "generator index {j} out of range for l = {ell}");
    let mut coords = theta.coords.clone();
    let value = theta.coords[j].clone();
    coords[j] = -value.clone();
    let prev = (j + ell - 1) % ell;
    let next = (j + 1) % ell;
    // for l = 2 both neighbours coincide and receive 2 * value
    coords[prev] = coords[prev].clone() + value.clone();
    coords[next] = coords[next].clone() + value;
    ThetaPoint { coords }
}

/// A permutation of `{0, ..., l-1}` in one-line form: `images[k] = w(k)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
#[serde(transparent)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidParameter(format!(
                    "{images:?} is not a permutation"
                )));
            }
        }
        Ok(Self { images })
    }

    pub fn identity(ell: usize) -> Self {
        Self {
            images: (0..ell).collect(),
        }
    }

    /// The transposition of `i` and `i + 1`.
    pub fn simple(i: usize, ell: usize) -> Self {
        let mut images: Vec<usize> = (0..ell).collect();
        images.swap(i, i + 1);
        Self { images }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, k: usize) -> usize {
        self.images[k]
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &i)| k == i)
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (k, &i) in self.images.iter().enumerate() {
            images[i] = k;
        }
        Self { images }
    }

    /// `self . other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            images: other.images.iter().map(|&k| self.images[k]).collect(),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

/// An element `(s, w)` of the affine symmetric group.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct AffineElement {
    translation: Charge,
    permutation: Permutation,
}

impl AffineElement {
    pub fn new(translation: Charge, permutation: Permutation) -> Result<Self> {
        if translation.level() != permutation.len() {
            return Err(Error::InvalidParameter(
                "translation and permutation have different lengths".into(),
            ));
        }
        Ok(Self {
            translation,
            permutation,
        })
    }

    pub fn identity(ell: usize) -> Self {
        Self {
            translation: Charge::zero(ell),
            permutation: Permutation::identity(ell),
        }
    }

    /// The abacus image of the simple reflection `sigma_j`.
    pub fn generator(j: usize, ell: usize) -> Self {
        assert!(j < ell, "generator index {j} out of range for l = {ell}");
        let ell_i = ell as i64;
        let i = (-(j as i64) - 1).rem_euclid(ell_i);
        let mut window: Vec<i64> = (0..ell_i).collect();
        if i + 1 < ell_i {
            window.swap(i as usize, i as usize + 1);
        } else {
            // swaps l-1 and l
            window[(ell - 1) % ell] = ell_i;
            window[0] -= 1;
            if ell == 1 {
                window[0] = 0;
            }
        }
        Self::from_window(&window)
    }

    pub fn translation(&self) -> &Charge {
        &self.translation
    }

    pub fn permutation(&self) -> &Permutation {
        &self.permutation
    }

    pub fn ell(&self) -> usize {
        self.permutation.len()
    }

    pub fn is_identity(&self) -> bool {
        self.permutation.is_identity() && self.translation.entries().iter().all(|&e| e == 0)
    }

    /// `f(k)` for `k = 0..l`, where `f = t_s . w` acts on bead positions.
    pub fn window(&self) -> Vec<i64> {
        let ell = self.ell() as i64;
        (0..self.ell())
            .map(|k| {
                let target = self.permutation.apply(k);
                target as i64 + ell * self.translation.entries()[target]
            })
            .collect()
    }

    pub fn from_window(window: &[i64]) -> Self {
        let ell = window.len() as i64;
        let mut images = vec![0usize; window.len()];
        let mut entries = vec![0i64; window.len()];
        for (k, &fk) in window.iter().enumerate() {
            let target = fk.rem_euclid(ell);
            images[k] = target as usize;
            entries[target as usize] = fk.div_euclid(ell);
        }
        Self {
            translation: Charge::new(entries).expect("windows of affine permutations sum to zero"),
            permutation: Permutation { images },
        }
    }

    fn eval(window: &[i64], x: i64) -> i64 {
        let ell = window.len() as i64;
        window[x.rem_euclid(ell) as usize] + ell * x.div_euclid(ell)
    }

    /// `self . other` as maps of bead positions.
    pub fn compose(&self, other: &Self) -> Self {
        let outer = self.window();
        let composed: Vec<i64> = other
            .window()
            .into_iter()
            .map(|x| Self::eval(&outer, x))
            .collect();
        Self::from_window(&composed)
    }

    pub fn inverse(&self) -> Self {
        let window = self.window();
        let ell = window.len() as i64;
        let mut inverse = vec![0i64; window.len()];
        for (k, &fk) in window.iter().enumerate() {
            // f(k) = fk, so f^{-1}(fk mod l) = k - l * (fk div l)
            inverse[fk.rem_euclid(ell) as usize] = k as i64 - ell * fk.div_euclid(ell);
        }
        Self::from_window(&inverse)
    }

    /// Generator indices `[j_1, ..., j_m]` with geometric element
    /// `sigma_{j_1} ... sigma_{j_m}` corresponding to this pair.
    pub fn generator_word(&self) -> Vec<usize> {
        let ell = self.ell();
        let ell_i = ell as i64;
        let mut window = self.window();
        let mut word = Vec::new();
        loop {
            let descent = (0..ell).find(|&i| {
                let next = if i + 1 < ell {
                    window[i + 1]
                } else {
                    window[0] + ell_i
                };
                window[i] > next
            });
            let Some(i) = descent else { break };
            if i + 1 < ell {
                window.swap(i, i + 1);
            } else {
                let last = window[ell - 1];
                window[ell - 1] = window[0] + ell_i;
                window[0] = last - ell_i;
            }
            word.push((-(i as i64) - 1).rem_euclid(ell_i) as usize);
        }
        word
    }

    /// The geometric action on a parameter point.
    pub fn apply<T: Scalar>(&self, theta: &ThetaPoint<T>) -> ThetaPoint<T> {
        self.generator_word()
            .iter()
            .rev()
            .fold(theta.clone(), |acc, &j| apply_generator(j, &acc))
    }
}

impl fmt::Display for AffineElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.translation, self.permutation)
    }
}

/// Outcome of reducing a point into the closed fundamental alcove.
#[derive(Clone, PartialEq, Debug)]
pub struct ReductionResult<T> {
    pub element: AffineElement,
    pub reduced: ThetaPoint<T>,
    /// Generators in the order they were applied to the input.
    pub word: Vec<usize>,
    pub type_j: TypeJ,
}

impl<T: Scalar + fmt::Display> Serialize for ReductionResult<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("ReductionResult", 5)?;
        st.serialize_field("word", &self.word)?;
        st.serialize_field("charge", &self.element.translation)?;
        st.serialize_field("permutation", &self.element.permutation)?;
        st.serialize_field("reduced", &self.reduced)?;
        st.serialize_field("typeJ", &self.type_j.members().collect::<Vec<_>>())?;
        st.end()
    }
}

/// Reduces `theta` into the closed fundamental alcove.
pub fn reduce_to_fundamental<T: Scalar>(theta: &ThetaPoint<T>) -> Result<ReductionResult<T>> {
    if !theta.is_normalized() {
        return Err(Error::InvalidParameter(
            "reduction needs a point whose coordinates sum to 1".into(),
        ));
    }
    let ell = theta.ell();
    let mut current = theta.clone();
    let mut element = AffineElement::identity(ell);
    let mut word = Vec::new();
    while let Some(j) = current.coords.iter().position(|c| c.is_negative()) {
        if word.len() >= REDUCTION_FUSE {
            return Err(Error::Internal(format!(
                "reduction did not terminate after {REDUCTION_FUSE} steps"
            )));
        }
        current = apply_generator(j, &current);
        element = AffineElement::generator(j, ell).compose(&element);
        word.push(j);
    }
    let type_j = current.zero_set();
    Ok(ReductionResult {
        element,
        reduced: current,
        word,
        type_j,
    })
}

/// Every alcove whose closure contains `theta`, as reductions.
///
/// The first entry is [`reduce_to_fundamental`]'s choice. Interior points
/// yield a single result.
pub fn adjacent_alcove_reductions<T: Scalar>(
    theta: &ThetaPoint<T>,
) -> Result<Vec<ReductionResult<T>>> {
    let base = reduce_to_fundamental(theta)?;
    let ell = theta.ell();
    let generators: Vec<usize> = base.type_j.members().collect();
    if generators.len() >= ell {
        return Err(Error::Internal(
            "stabiliser cannot be the whole group".into(),
        ));
    }
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::from([(base.element.clone(), base.word.clone())]);
    seen.insert(base.element.window());
    while let Some((element, word)) = queue.pop_front() {
        for &j in &generators {
            let next = AffineElement::generator(j, ell).compose(&element);
            if seen.insert(next.window()) {
                let mut next_word = word.clone();
                next_word.push(j);
                queue.push_back((next, next_word));
            }
        }
        out.push(ReductionResult {
            element,
            reduced: base.reduced.clone(),
            word,
            type_j: base.type_j.clone(),
        });
    }
    Ok(out)
}

/// Label of the alcove `A_r = {(d, 1 - d) : r < d < r + 1}` for `l = 2`:
/// `((r/2, -r/2), e)` for even `r`, `(((1-r)/2, (r-1)/2), sigma_1)` for odd.
pub fn type_b_alcove_label(r: i64) -> AffineElement {
    if r.rem_euclid(2) == 0 {
        AffineElement {
            translation: Charge::new(vec![r / 2, -r / 2]).expect("sums to zero"),
            permutation: Permutation::identity(2),
        }
    } else {
        AffineElement {
            translation: Charge::new(vec![(1 - r) / 2, (r - 1) / 2]).expect("sums to zero"),
            permutation: Permutation::simple(0, 2),
        }
    }
}
