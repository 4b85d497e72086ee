//! Finite sets and total functions: the exact kernel every law check reduces to.
//!
//! A [`FinSet`] is an ordered list of distinct element labels; elements are
//! identified by position. A [`FinFun`] is an index table. Deciding whether a
//! diagram commutes is therefore a table comparison, with no tolerances.
//!
//! Constructed sets (products, coproducts, exponentials, powersets) derive
//! their labels deterministically from the factors, so structurally equal
//! constructions are label-identical and can be found by equality lookup in a
//! universe. The canonical element orders are part of the contract:
//!
//! * `product(A, B)` enumerates pairs with `A` as the major index;
//! * `coproduct(A, B)` lists the `A`-summand first;
//! * `exponential(A, B)` orders functions as base-`|B|` numerals whose most
//!   significant digit is the value at the first element of `A`;
//! * `powerset(A)` enumerates bitmasks ascending, so the empty subset is first
//!   and bit `i` means element `i` is present.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

// ===== objects =====

/// A finite set presented as an ordered list of distinct labels.
#[derive(Clone, Eq, Hash)]
pub struct FinSet {
    labels: Arc<Vec<String>>,
}

impl PartialEq for FinSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels
    }
}

impl FinSet {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.clone()) {
                return Err(Error::DuplicateLabel { label: l.clone() });
            }
        }
        Ok(FinSet {
            labels: Arc::new(labels),
        })
    }

    /// The n-element set with labels `e0 .. e{n-1}`.
    pub fn canonical(n: usize) -> Self {
        FinSet {
            labels: Arc::new((0..n).map(|i| format!("e{i}")).collect()),
        }
    }

    pub fn empty() -> Self {
        FinSet {
            labels: Arc::new(Vec::new()),
        }
    }

    /// The terminal object: one element labelled `*`.
    pub fn unit() -> Self {
        FinSet {
            labels: Arc::new(vec!["*".to_string()]),
        }
    }

    pub(crate) fn from_labels_unchecked(labels: Vec<String>) -> Self {
        FinSet {
            labels: Arc::new(labels),
        }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels.join(", "))
    }
}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinSet{self}")
    }
}

// ===== morphisms =====

/// A total function between finite sets, stored as an index table.
#[derive(Clone, PartialEq, Eq)]
pub struct FinFun {
    dom: FinSet,
    cod: FinSet,
    table: Arc<Vec<usize>>,
}

impl FinFun {
    pub fn new(dom: FinSet, cod: FinSet, table: Vec<usize>) -> Result<Self> {
        if table.len() != dom.size() {
            return Err(Error::BadLength {
                expected: dom.size(),
                found: table.len(),
            });
        }
        for (position, &value) in table.iter().enumerate() {
            if value >= cod.size() {
                return Err(Error::BadEntry {
                    position,
                    value,
                    cod: cod.size(),
                });
            }
        }
        Ok(FinFun {
            dom,
            cod,
            table: Arc::new(table),
        })
    }

    /// Builds a function from a closure over domain indices. Panics if the
    /// closure steps outside the codomain; use only with total-by-construction
    /// formulas.
    pub fn from_fn(dom: FinSet, cod: FinSet, mut f: impl FnMut(usize) -> usize) -> Self {
        let table: Vec<usize> = (0..dom.size()).map(&mut f).collect();
        debug_assert!(table.iter().all(|&v| v < cod.size()));
        assert!(
            table.iter().all(|&v| v < cod.size()),
            "from_fn produced an out-of-range value"
        );
        FinFun {
            dom,
            cod,
            table: Arc::new(table),
        }
    }

    pub fn identity(a: &FinSet) -> Self {
        FinFun::from_fn(a.clone(), a.clone(), |i| i)
    }

    pub fn constant(dom: FinSet, cod: FinSet, value: usize) -> Self {
        assert!(value < cod.size());
        FinFun::from_fn(dom, cod, |_| value)
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.table.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.cod.size()];
        self.table.iter().all(|&v| !std::mem::replace(&mut hit[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.cod.size()];
        for &v in self.table.iter() {
            hit[v] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_bijection(&self) -> bool {
        self.dom.size() == self.cod.size() && self.is_injective()
    }

    pub fn inverse(&self) -> Result<FinFun> {
        if !self.is_bijection() {
            return Err(Error::precondition(format!(
                "cannot invert non-bijective function {self}"
            )));
        }
        let mut table = vec![0usize; self.cod.size()];
        for (i, &v) in self.table.iter().enumerate() {
            table[v] = i;
        }
        Ok(FinFun {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            table: Arc::new(table),
        })
    }
}

impl fmt::Display for FinFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = self
            .table
            .iter()
            .enumerate()
            .map(|(i, &v)| format!("{}->{}", self.dom.label(i), self.cod.label(v)))
            .collect();
        write!(f, "[{}]", entries.join(", "))
    }
}

impl fmt::Debug for FinFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinFun{self}")
    }
}

/// `g` after `f`.
pub fn compose(g: &FinFun, f: &FinFun) -> Result<FinFun> {
    if f.cod != g.dom {
        return Err(Error::mismatch(
            "compose: codomain of inner must equal domain of outer",
            g.dom.to_string(),
            f.cod.to_string(),
        ));
    }
    Ok(FinFun::from_fn(f.dom.clone(), g.cod.clone(), |i| {
        g.table[f.table[i]]
    }))
}

pub fn identity(a: &FinSet) -> FinFun {
    FinFun::identity(a)
}

/// The unique map into the terminal object.
pub fn bang(a: &FinSet) -> FinFun {
    FinFun::from_fn(a.clone(), FinSet::unit(), |_| 0)
}

/// The unique map out of the initial object.
pub fn initial_arrow(a: &FinSet) -> FinFun {
    FinFun::from_fn(FinSet::empty(), a.clone(), |_| unreachable!())
}

/// The point `1 -> X` hitting element `i`.
pub fn point(x: &FinSet, i: usize) -> FinFun {
    FinFun::constant(FinSet::unit(), x.clone(), i)
}

// ===== products =====

/// A binary product together with its index arithmetic.
pub struct Product {
    pub object: FinSet,
    pub left: FinSet,
    pub right: FinSet,
}

pub fn product(a: &FinSet, b: &FinSet) -> Product {
    let mut labels = Vec::with_capacity(a.size() * b.size());
    for la in a.labels() {
        for lb in b.labels() {
            labels.push(format!("({la},{lb})"));
        }
    }
    Product {
        object: FinSet::from_labels_unchecked(labels),
        left: a.clone(),
        right: b.clone(),
    }
}

impl Product {
    pub fn encode(&self, ia: usize, ib: usize) -> usize {
        ia * self.right.size() + ib
    }

    pub fn decode(&self, i: usize) -> (usize, usize) {
        (i / self.right.size(), i % self.right.size())
    }

    pub fn proj1(&self) -> FinFun {
        let r = self.right.size();
        FinFun::from_fn(self.object.clone(), self.left.clone(), |i| i / r)
    }

    pub fn proj2(&self) -> FinFun {
        let r = self.right.size();
        FinFun::from_fn(self.object.clone(), self.right.clone(), |i| i % r)
    }
}

/// Pairing `<f, g> : Z -> A x B` for `f : Z -> A`, `g : Z -> B`.
pub fn pair(f: &FinFun, g: &FinFun) -> Result<FinFun> {
    if f.dom() != g.dom() {
        return Err(Error::mismatch(
            "pair: both legs must share a domain",
            f.dom().to_string(),
            g.dom().to_string(),
        ));
    }
    let p = product(f.cod(), g.cod());
    Ok(FinFun::from_fn(f.dom().clone(), p.object.clone(), |i| {
        p.encode(f.apply(i), g.apply(i))
    }))
}

/// `f x g : A x B -> A' x B'`.
pub fn product_map(f: &FinFun, g: &FinFun) -> FinFun {
    let src = product(f.dom(), g.dom());
    let dst = product(f.cod(), g.cod());
    FinFun::from_fn(src.object.clone(), dst.object.clone(), |i| {
        let (ia, ib) = src.decode(i);
        dst.encode(f.apply(ia), g.apply(ib))
    })
}

/// The swap `A x B -> B x A`.
pub fn symmetry(a: &FinSet, b: &FinSet) -> FinFun {
    let src = product(a, b);
    let dst = product(b, a);
    FinFun::from_fn(src.object.clone(), dst.object.clone(), |i| {
        let (ia, ib) = src.decode(i);
        dst.encode(ib, ia)
    })
}

/// The canonical `(A x B) x C -> A x (B x C)`.
pub fn assoc_product(a: &FinSet, b: &FinSet, c: &FinSet) -> FinFun {
    let ab = product(a, b);
    let src = product(&ab.object, c);
    let bc = product(b, c);
    let dst = product(a, &bc.object);
    FinFun::from_fn(src.object.clone(), dst.object.clone(), |i| {
        let (iab, ic) = src.decode(i);
        let (ia, ib) = ab.decode(iab);
        dst.encode(ia, bc.encode(ib, ic))
    })
}

// ===== coproducts =====

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left(usize),
    Right(usize),
}

/// A binary coproduct together with its index arithmetic.
pub struct Coproduct {
    pub object: FinSet,
    pub left: FinSet,
    pub right: FinSet,
}

pub fn coproduct(a: &FinSet, b: &FinSet) -> Coproduct {
    let mut labels = Vec::with_capacity(a.size() + b.size());
    for la in a.labels() {
        labels.push(format!("inl {la}"));
    }
    for lb in b.labels() {
        labels.push(format!("inr {lb}"));
    }
    Coproduct {
        object: FinSet::from_labels_unchecked(labels),
        left: a.clone(),
        right: b.clone(),
    }
}

impl Coproduct {
    pub fn encode_left(&self, ia: usize) -> usize {
        ia
    }

    pub fn encode_right(&self, ib: usize) -> usize {
        self.left.size() + ib
    }

    pub fn decode(&self, i: usize) -> Side {
        if i < self.left.size() {
            Side::Left(i)
        } else {
            Side::Right(i - self.left.size())
        }
    }

    pub fn inl(&self) -> FinFun {
        FinFun::from_fn(self.left.clone(), self.object.clone(), |i| i)
    }

    pub fn inr(&self) -> FinFun {
        let shift = self.left.size();
        FinFun::from_fn(self.right.clone(), self.object.clone(), |i| shift + i)
    }
}

/// Case split `[f, g] : A + B -> Z` for `f : A -> Z`, `g : B -> Z`.
pub fn copair(f: &FinFun, g: &FinFun) -> Result<FinFun> {
    if f.cod() != g.cod() {
        return Err(Error::mismatch(
            "copair: both branches must share a codomain",
            f.cod().to_string(),
            g.cod().to_string(),
        ));
    }
    let c = coproduct(f.dom(), g.dom());
    Ok(FinFun::from_fn(c.object.clone(), f.cod().clone(), |i| {
        match c.decode(i) {
            Side::Left(ia) => f.apply(ia),
            Side::Right(ib) => g.apply(ib),
        }
    }))
}

/// `f + g : A + B -> A' + B'`.
pub fn coproduct_map(f: &FinFun, g: &FinFun) -> FinFun {
    let src = coproduct(f.dom(), g.dom());
    let dst = coproduct(f.cod(), g.cod());
    FinFun::from_fn(src.object.clone(), dst.object.clone(), |i| {
        match src.decode(i) {
            Side::Left(ia) => dst.encode_left(f.apply(ia)),
            Side::Right(ib) => dst.encode_right(g.apply(ib)),
        }
    })
}

/// The canonical `(A + B) + C -> A + (B + C)`.
pub fn assoc_coproduct(a: &FinSet, b: &FinSet, c: &FinSet) -> FinFun {
    let ab = coproduct(a, b);
    let src = coproduct(&ab.object, c);
    let bc = coproduct(b, c);
    let dst = coproduct(a, &bc.object);
    FinFun::from_fn(src.object.clone(), dst.object.clone(), |i| {
        match src.decode(i) {
            Side::Left(iab) => match ab.decode(iab) {
                Side::Left(ia) => dst.encode_left(ia),
                Side::Right(ib) => dst.encode_right(bc.encode_left(ib)),
            },
            Side::Right(ic) => dst.encode_right(bc.encode_right(ic)),
        }
    })
}

// ===== exponentials =====

/// The function space `[A, B]` with its canonical numbering.
///
/// Function `i` maps element `j` of the base to digit `j` of `i` written in
/// base `|B|` with the value at the first base element most significant.
/// Consequently `eval_at` of the first base element has the blockiest table:
/// on `[{a,b}, {0,1}]` evaluation at `a` reads `[0, 0, 1, 1]`.
pub struct Exponential {
    pub object: FinSet,
    pub base: FinSet,
    pub target: FinSet,
}

pub fn exponential(a: &FinSet, b: &FinSet) -> Exponential {
    let count = checked_pow(b.size(), a.size())
        .and_then(|n| usize::try_from(n).ok())
        .expect("exponential size overflow; callers must enforce the size cap first");
    let mut labels = Vec::with_capacity(count);
    let mut digits = vec![0usize; a.size()];
    for _ in 0..count {
        let entries: Vec<String> = digits
            .iter()
            .enumerate()
            .map(|(j, &d)| format!("{}->{}", a.label(j), b.label(d)))
            .collect();
        labels.push(format!("fun{{{}}}", entries.join(",")));
        // odometer with the last position fastest
        for pos in (0..digits.len()).rev() {
            digits[pos] += 1;
            if digits[pos] < b.size() {
                break;
            }
            digits[pos] = 0;
        }
    }
    if a.size() == 0 {
        // no positions to iterate: exactly one (empty) function
        labels = vec!["fun{}".to_string()];
    }
    Exponential {
        object: FinSet::from_labels_unchecked(labels),
        base: a.clone(),
        target: b.clone(),
    }
}

impl Exponential {
    /// Index of the function with the given value table (base index -> target index).
    pub fn encode(&self, values: &[usize]) -> usize {
        debug_assert_eq!(values.len(), self.base.size());
        let mut i = 0usize;
        for &v in values {
            debug_assert!(v < self.target.size().max(1));
            i = i * self.target.size() + v;
        }
        i
    }

    /// Value table of function `i`.
    pub fn decode(&self, mut i: usize) -> Vec<usize> {
        let n = self.base.size();
        let mut values = vec![0usize; n];
        for pos in (0..n).rev() {
            values[pos] = i % self.target.size();
            i /= self.target.size();
        }
        values
    }

    /// `[A,B] -> B`, evaluation at base element `j`.
    pub fn eval_at(&self, j: usize) -> FinFun {
        FinFun::from_fn(self.object.clone(), self.target.clone(), |i| {
            self.decode(i)[j]
        })
    }

    /// `[A,B] x A -> B`.
    pub fn eval(&self) -> FinFun {
        let p = product(&self.object, &self.base);
        FinFun::from_fn(p.object.clone(), self.target.clone(), |i| {
            let (ifun, ia) = p.decode(i);
            self.decode(ifun)[ia]
        })
    }

    /// Element `i` viewed as an actual function `A -> B`.
    pub fn as_fun(&self, i: usize) -> FinFun {
        FinFun::new(self.base.clone(), self.target.clone(), self.decode(i))
            .expect("decoded table is total by construction")
    }
}

/// Currying: turns `f : Z x A -> B` into `Z -> [A, B]`.
pub fn curry(f: &FinFun, z: &FinSet, a: &FinSet) -> Result<FinFun> {
    let p = product(z, a);
    if f.dom() != &p.object {
        return Err(Error::mismatch(
            "curry: domain must be the product of the given factors",
            p.object.to_string(),
            f.dom().to_string(),
        ));
    }
    let e = exponential(a, f.cod());
    Ok(FinFun::from_fn(z.clone(), e.object.clone(), |iz| {
        let values: Vec<usize> = (0..a.size()).map(|ia| f.apply(p.encode(iz, ia))).collect();
        e.encode(&values)
    }))
}

/// Uncurrying: turns `g : Z -> [A, B]` into `Z x A -> B`.
pub fn uncurry(g: &FinFun, a: &FinSet, b: &FinSet) -> Result<FinFun> {
    let e = exponential(a, b);
    if g.cod() != &e.object {
        return Err(Error::mismatch(
            "uncurry: codomain must be the exponential of the given factors",
            e.object.to_string(),
            g.cod().to_string(),
        ));
    }
    let p = product(g.dom(), a);
    Ok(FinFun::from_fn(p.object.clone(), b.clone(), |i| {
        let (iz, ia) = p.decode(i);
        e.decode(g.apply(iz))[ia]
    }))
}

// ===== powersets =====

/// The powerset `P(A)` with bitmask numbering: subset `i` contains element `j`
/// iff bit `j` of `i` is set, so the empty subset is element 0.
pub struct Powerset {
    pub object: FinSet,
    pub base: FinSet,
}

pub fn powerset(a: &FinSet) -> Powerset {
    let n = a.size();
    assert!(n < usize::BITS as usize, "powerset base too large");
    let count = 1usize
        .checked_shl(n as u32)
        .expect("powerset size overflow; callers must enforce the size cap first");
    let mut labels = Vec::with_capacity(count);
    for mask in 0..count {
        let members: Vec<&str> = (0..n)
            .filter(|j| mask & (1 << j) != 0)
            .map(|j| a.label(j))
            .collect();
        labels.push(format!("{{{}}}", members.join(",")));
    }
    Powerset {
        object: FinSet::from_labels_unchecked(labels),
        base: a.clone(),
    }
}

impl Powerset {
    pub fn contains(&self, mask: usize, element: usize) -> bool {
        mask & (1 << element) != 0
    }

    /// Direct image along `f : A -> B`, as a map `P(A) -> P(B)`.
    pub fn direct_image(&self, f: &FinFun, target: &Powerset) -> FinFun {
        FinFun::from_fn(self.object.clone(), target.object.clone(), |mask| {
            let mut image = 0usize;
            for j in 0..self.base.size() {
                if mask & (1 << j) != 0 {
                    image |= 1 << f.apply(j);
                }
            }
            image
        })
    }
}

// ===== hom-set enumeration =====

/// `|B|^|A|` without overflow, `None` when astronomically large.
pub fn hom_size(a: &FinSet, b: &FinSet) -> Option<u128> {
    checked_pow(b.size(), a.size())
}

pub(crate) fn checked_pow(base: usize, exp: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base as u128)?;
    }
    Some(acc)
}

/// Lazy enumeration of every function `A -> B` in canonical order.
///
/// The order agrees with [`exponential`]: function `i` of the iteration is
/// element `i` of `exponential(A, B)`. For empty `A` there is exactly one
/// (empty) function; for empty `B` and nonempty `A` there are none.
pub fn all_functions(a: &FinSet, b: &FinSet) -> AllFunctions {
    AllFunctions {
        dom: a.clone(),
        cod: b.clone(),
        next: Some(vec![0usize; a.size()]),
    }
}

pub struct AllFunctions {
    dom: FinSet,
    cod: FinSet,
    next: Option<Vec<usize>>,
}

impl Iterator for AllFunctions {
    type Item = FinFun;

    fn next(&mut self) -> Option<FinFun> {
        if self.cod.size() == 0 && self.dom.size() > 0 {
            return None;
        }
        let current = self.next.take()?;
        let fun = FinFun::new(self.dom.clone(), self.cod.clone(), current.clone())
            .expect("odometer stays in range");
        // advance, last position fastest, to match the exponential numbering
        let mut digits = current;
        let mut rolled_over = true;
        for pos in (0..digits.len()).rev() {
            digits[pos] += 1;
            if digits[pos] < self.cod.size() {
                rolled_over = false;
                break;
            }
            digits[pos] = 0;
        }
        if digits.is_empty() {
            rolled_over = true; // single empty function, then stop
        }
        if !rolled_over {
            self.next = Some(digits);
        }
        Some(fun)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(labels: &[&str]) -> FinSet {
        FinSet::new(labels.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    #[test]
    fn product_is_a_major() {
        let p = product(&set(&["a", "b"]), &set(&["x", "y"]));
        assert_eq!(
            p.object.labels(),
            &["(a,x)", "(a,y)", "(b,x)", "(b,y)"]
        );
        assert_eq!(p.proj1().table(), &[0, 0, 1, 1]);
        assert_eq!(p.proj2().table(), &[0, 1, 0, 1]);
    }

    #[test]
    fn coproduct_lists_left_first() {
        let c = coproduct(&set(&["a"]), &set(&["x", "y"]));
        assert_eq!(c.object.labels(), &["inl a", "inr x", "inr y"]);
        assert_eq!(c.inl().table(), &[0]);
        assert_eq!(c.inr().table(), &[1, 2]);
    }

    #[test]
    fn exponential_numbering_matches_pinned_eval_table() {
        // On [{a,b},{0,1}], evaluation at `a` must read [0,0,1,1].
        let e = exponential(&set(&["a", "b"]), &set(&["0", "1"]));
        assert_eq!(e.object.size(), 4);
        assert_eq!(e.eval_at(0).table(), &[0, 0, 1, 1]);
        assert_eq!(e.eval_at(1).table(), &[0, 1, 0, 1]);
    }

    #[test]
    fn exponential_agrees_with_all_functions_order() {
        let a = set(&["a", "b"]);
        let b = set(&["0", "1", "2"]);
        let e = exponential(&a, &b);
        for (i, f) in all_functions(&a, &b).enumerate() {
            assert_eq!(e.decode(i), f.table());
            assert_eq!(e.encode(f.table()), i);
        }
        assert_eq!(all_functions(&a, &b).count(), 9);
    }

    #[test]
    fn empty_domain_has_one_function_empty_codomain_none() {
        let empty = FinSet::empty();
        let b = set(&["x"]);
        assert_eq!(all_functions(&empty, &b).count(), 1);
        assert_eq!(all_functions(&empty, &empty).count(), 1);
        assert_eq!(all_functions(&b, &empty).count(), 0);
        assert_eq!(exponential(&empty, &b).object.size(), 1);
        assert_eq!(exponential(&b, &empty).object.size(), 0);
    }

    #[test]
    fn powerset_bitmask_order() {
        let p = powerset(&set(&["a", "b"]));
        assert_eq!(p.object.labels(), &["{}", "{a}", "{b}", "{a,b}"]);
    }

    #[test]
    fn universal_properties_of_product_and_coproduct() {
        let z = set(&["z0", "z1", "z2"]);
        let a = set(&["a0", "a1"]);
        let b = set(&["b0", "b1"]);
        let p = product(&a, &b);
        for f in all_functions(&z, &a) {
            for g in all_functions(&z, &b) {
                let h = pair(&f, &g).unwrap();
                assert_eq!(compose(&p.proj1(), &h).unwrap(), f);
                assert_eq!(compose(&p.proj2(), &h).unwrap(), g);
            }
        }
        let c = coproduct(&a, &b);
        for f in all_functions(&a, &z) {
            for g in all_functions(&b, &z) {
                let h = copair(&f, &g).unwrap();
                assert_eq!(compose(&h, &c.inl()).unwrap(), f);
                assert_eq!(compose(&h, &c.inr()).unwrap(), g);
            }
        }
    }

    #[test]
    fn curry_uncurry_roundtrip() {
        let z = set(&["z0", "z1"]);
        let a = set(&["a0", "a1"]);
        let b = set(&["b0", "b1", "b2"]);
        let p = product(&z, &a);
        for f in all_functions(&p.object, &b) {
            let g = curry(&f, &z, &a).unwrap();
            assert_eq!(uncurry(&g, &a, &b).unwrap(), f);
        }
        let e = exponential(&a, &b);
        for g in all_functions(&z, &e.object) {
            let f = uncurry(&g, &a, &b).unwrap();
            assert_eq!(curry(&f, &z, &a).unwrap(), g);
        }
    }

    #[test]
    fn compose_checks_boundaries() {
        let a = set(&["a"]);
        let b = set(&["x", "y"]);
        let f = bang(&a);
        let g = identity(&b);
        assert!(compose(&g, &f).is_err());
    }

    #[test]
    fn inverse_rejects_non_bijections() {
        let a = set(&["a", "b"]);
        let f = FinFun::constant(a.clone(), a.clone(), 0);
        assert!(f.inverse().is_err());
        let s = symmetry(&a, &a);
        let inv = s.inverse().unwrap();
        assert!(compose(&inv, &s).unwrap().is_identity());
    }
}
