//! Truncated Taylor arithmetic.
//!
//! [`Jet`] is a multivariate Taylor polynomial over a small set of active
//! variables, truncated at a total order and, optionally, at a per-variable
//! degree. [`Grad`] is the first-order special case over many variables with a
//! sparse derivative block; nesting `Grad<Grad<C64>>` gives every mixed
//! second derivative `∂_j ∂̄_k` in one pass.
//!
//! [`Mixed`] is a flat form of `Grad<Grad<C64>>` for the metric tensor, and
//! [`Directional`] carries a second-order direction on top of a `w̄` gradient
//! for the geodesic equation.
//!
//! All of them implement [`Scalar`], so they can be used as coefficient rings
//! of each other: `Grad<Grad<Mixed>>` carries two scalar directions on top of a
//! full Hessian block.

use crate::scalar::{factorial, Scalar, C64};
use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

/// Monomial basis and multiplication table for a [`Jet`].
#[derive(Debug)]
pub struct JetLayout {
    caps: Vec<u8>,
    order: usize,
    monomials: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
    // (i, j, k): monomial i times monomial j is monomial k
    products: Vec<(u32, u32, u32)>,
}

type LayoutKey = (Vec<u8>, usize);

fn layout_cache() -> &'static Mutex<HashMap<LayoutKey, &'static JetLayout>> {
    static CACHE: OnceLock<Mutex<HashMap<LayoutKey, &'static JetLayout>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl JetLayout {
    /// All monomials in `nvars` variables of total degree at most `order`.
    pub fn total_degree(nvars: usize, order: usize) -> &'static JetLayout {
        Self::with_caps(&vec![order as u8; nvars], order)
    }

    /// Monomials with `exponent[i] <= caps[i]` and total degree at most `order`.
    ///
    /// Layouts are interned, so two jets built from the same caps share one
    /// table and can be combined.
    pub fn with_caps(caps: &[u8], order: usize) -> &'static JetLayout {
        let key = (caps.to_vec(), order);
        let mut cache = layout_cache().lock().expect("layout cache poisoned");
        if let Some(layout) = cache.get(&key) {
            return layout;
        }
        let layout: &'static JetLayout = Box::leak(Box::new(Self::build(caps, order)));
        cache.insert(key, layout);
        layout
    }

    fn build(caps: &[u8], order: usize) -> JetLayout {
        let nvars = caps.len();
        let mut monomials = Vec::new();
        for degree in 0..=order {
            let mut current = vec![0u8; nvars];
            enumerate_degree(caps, degree, 0, &mut current, &mut monomials);
        }
        let index: HashMap<Vec<u8>, usize> = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let mut products = Vec::new();
        for (i, a) in monomials.iter().enumerate() {
            for (j, b) in monomials.iter().enumerate() {
                let sum: Vec<u8> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if let Some(&k) = index.get(&sum) {
                    products.push((i as u32, j as u32, k as u32));
                }
            }
        }
        JetLayout {
            caps: caps.to_vec(),
            order,
            monomials,
            index,
            products,
        }
    }

    pub fn nvars(&self) -> usize {
        self.caps.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Vec<u8>] {
        &self.monomials
    }

    pub fn index_of(&self, exponents: &[u8]) -> Option<usize> {
        self.index.get(exponents).copied()
    }
}

// Graded order: within one degree, earlier variables get higher exponents first.
fn enumerate_degree(
    caps: &[u8],
    remaining: usize,
    var: usize,
    current: &mut Vec<u8>,
    out: &mut Vec<Vec<u8>>,
) {
    if var == caps.len() {
        if remaining == 0 {
            out.push(current.clone());
        }
        return;
    }
    let max = remaining.min(caps[var] as usize);
    for e in (0..=max).rev() {
        current[var] = e as u8;
        enumerate_degree(caps, remaining - e, var + 1, current, out);
    }
    current[var] = 0;
}

/// Truncated multivariate Taylor polynomial with coefficients in `R`.
///
/// A jet without a layout is a constant and combines with any layout.
#[derive(Clone, Debug)]
pub struct Jet<R = C64> {
    layout: Option<&'static JetLayout>,
    coeffs: Vec<R>,
}

impl<R: Scalar> Jet<R> {
    pub fn constant(value: R) -> Self {
        Jet {
            layout: None,
            coeffs: vec![value],
        }
    }

    /// `value + coef · x_var` in the given layout.
    pub fn seeded(layout: &'static JetLayout, value: R, var: usize, coef: R) -> Self {
        assert!(var < layout.nvars(), "variable {var} outside layout");
        let mut coeffs = vec![R::zero(); layout.len()];
        coeffs[0] = value;
        let mut unit = vec![0u8; layout.nvars()];
        unit[var] = 1;
        let idx = layout
            .index_of(&unit)
            .expect("layout must contain first-order monomials");
        coeffs[idx] = coef;
        Jet {
            layout: Some(layout),
            coeffs,
        }
    }

    pub fn layout(&self) -> Option<&'static JetLayout> {
        self.layout
    }

    /// Coefficient of `x^exponents`; zero when the monomial is truncated away.
    pub fn coeff(&self, exponents: &[u8]) -> R {
        match self.layout {
            None => {
                if exponents.iter().all(|&e| e == 0) {
                    self.coeffs[0].clone()
                } else {
                    R::zero()
                }
            }
            Some(layout) => layout
                .index_of(exponents)
                .map(|i| self.coeffs[i].clone())
                .unwrap_or_else(R::zero),
        }
    }

    /// Partial derivative `∂^α` at the expansion point, i.e. `α! · coeff(α)`.
    pub fn derivative(&self, exponents: &[u8]) -> R {
        let weight: f64 = exponents.iter().map(|&e| factorial(e as usize)).product();
        self.coeff(exponents).scale(C64::new(weight, 0.0))
    }

    fn merged_layout(&self, other: &Self) -> Option<&'static JetLayout> {
        match (self.layout, other.layout) {
            (None, l) | (l, None) => l,
            (Some(a), Some(b)) => {
                assert!(
                    std::ptr::eq(a, b),
                    "jets with different layouts cannot be combined"
                );
                Some(a)
            }
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&R, &R) -> R) -> Self {
        let layout = self.merged_layout(other);
        let n = layout.map_or(1, |l| l.len());
        let zero = R::zero();
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = other.coeffs.get(i).unwrap_or(&zero);
                f(a, b)
            })
            .collect();
        Jet { layout, coeffs }
    }

    fn map(&self, f: impl Fn(&R) -> R) -> Self {
        Jet {
            layout: self.layout,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

impl<R: Scalar> Scalar for Jet<R> {
    fn from_c64(c: C64) -> Self {
        Jet::constant(R::from_c64(c))
    }

    fn value(&self) -> C64 {
        self.coeffs[0].value()
    }

    fn add_ref(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.add_ref(b))
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.sub_ref(b))
    }

    fn mul_ref(&self, other: &Self) -> Self {
        match (self.layout, other.layout) {
            (None, _) => {
                let k = &self.coeffs[0];
                other.map(|b| k.mul_ref(b))
            }
            (_, None) => {
                let k = &other.coeffs[0];
                self.map(|a| a.mul_ref(k))
            }
            (Some(layout), Some(_)) => {
                self.merged_layout(other);
                let mut coeffs = vec![R::zero(); layout.len()];
                let a_zero: Vec<bool> = self.coeffs.iter().map(Scalar::is_zero).collect();
                let b_zero: Vec<bool> = other.coeffs.iter().map(Scalar::is_zero).collect();
                for &(i, j, k) in &layout.products {
                    let (i, j, k) = (i as usize, j as usize, k as usize);
                    if a_zero[i] || b_zero[j] {
                        continue;
                    }
                    let term = self.coeffs[i].mul_ref(&other.coeffs[j]);
                    coeffs[k] = coeffs[k].add_ref(&term);
                }
                Jet {
                    layout: Some(layout),
                    coeffs,
                }
            }
        }
    }

    fn scale(&self, c: C64) -> Self {
        self.map(|a| a.scale(c))
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    fn nil_degree(&self) -> usize {
        let own = self.layout.map_or(0, |l| l.order);
        own + self
            .coeffs
            .iter()
            .map(Scalar::nil_degree)
            .max()
            .unwrap_or(0)
    }
}

/// First-order jet over `n` variables: `v + Σ d_i ε_i` with `ε_i ε_j = 0`.
///
/// `d == None` means every partial is zero, which keeps constants and
/// single-variable seeds cheap.
#[derive(Clone, Debug)]
pub struct Grad<R = C64> {
    v: R,
    d: Option<Vec<R>>,
}

impl<R: Scalar> Grad<R> {
    pub fn constant(v: R) -> Self {
        Grad { v, d: None }
    }

    /// `value + coef · ε_var` with `n` variables in total.
    pub fn seeded(n: usize, value: R, var: usize, coef: R) -> Self {
        let mut d = vec![R::zero(); n];
        d[var] = coef;
        Grad {
            v: value,
            d: Some(d),
        }
    }

    pub fn from_parts(v: R, d: Vec<R>) -> Self {
        Grad { v, d: Some(d) }
    }

    pub fn val(&self) -> &R {
        &self.v
    }

    /// Partial in variable `i`; zero if no derivative block is stored.
    pub fn partial(&self, i: usize) -> R {
        self.d
            .as_ref()
            .and_then(|d| d.get(i).cloned())
            .unwrap_or_else(R::zero)
    }

    pub fn partials(&self) -> Option<&[R]> {
        self.d.as_deref()
    }

    fn combine(
        a: &Option<Vec<R>>,
        b: &Option<Vec<R>>,
        f: impl Fn(&R, &R) -> R,
        neg: impl Fn(&R) -> R,
    ) -> Option<Vec<R>> {
        match (a, b) {
            (None, None) => None,
            (Some(x), None) => Some(x.clone()),
            (None, Some(y)) => Some(y.iter().map(neg).collect()),
            (Some(x), Some(y)) => {
                assert_eq!(x.len(), y.len(), "gradient length mismatch");
                Some(x.iter().zip(y).map(|(p, q)| f(p, q)).collect())
            }
        }
    }
}

impl<R: Scalar> Scalar for Grad<R> {
    fn from_c64(c: C64) -> Self {
        Grad::constant(R::from_c64(c))
    }

    fn value(&self) -> C64 {
        self.v.value()
    }

    fn add_ref(&self, other: &Self) -> Self {
        Grad {
            v: self.v.add_ref(&other.v),
            d: Self::combine(&self.d, &other.d, |a, b| a.add_ref(b), |b| b.clone()),
        }
    }

    fn sub_ref(&self, other: &Self) -> Self {
        Grad {
            v: self.v.sub_ref(&other.v),
            d: Self::combine(
                &self.d,
                &other.d,
                |a, b| a.sub_ref(b),
                |b| b.scale(C64::new(-1.0, 0.0)),
            ),
        }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let v = self.v.mul_ref(&other.v);
        let left = self.d.as_ref().map(|d| {
            d.iter()
                .map(|x| {
                    if x.is_zero() {
                        R::zero()
                    } else {
                        x.mul_ref(&other.v)
                    }
                })
                .collect::<Vec<_>>()
        });
        let right = other.d.as_ref().map(|d| {
            d.iter()
                .map(|y| {
                    if y.is_zero() {
                        R::zero()
                    } else {
                        self.v.mul_ref(y)
                    }
                })
                .collect::<Vec<_>>()
        });
        let d = match (left, right) {
            (None, None) => None,
            (Some(x), None) | (None, Some(x)) => Some(x),
            (Some(x), Some(y)) => Some(
                x.iter()
                    .zip(&y)
                    .map(|(p, q)| match (p.is_zero(), q.is_zero()) {
                        (true, _) => q.clone(),
                        (_, true) => p.clone(),
                        _ => p.add_ref(q),
                    })
                    .collect(),
            ),
        };
        Grad { v, d }
    }

    fn scale(&self, c: C64) -> Self {
        Grad {
            v: self.v.scale(c),
            d: self
                .d
                .as_ref()
                .map(|d| d.iter().map(|x| x.scale(c)).collect()),
        }
    }

    fn is_zero(&self) -> bool {
        self.v.is_zero()
            && self
                .d
                .as_ref()
                .is_none_or(|d| d.iter().all(Scalar::is_zero))
    }

    fn nil_degree(&self) -> usize {
        let inner = self
            .d
            .iter()
            .flatten()
            .map(Scalar::nil_degree)
            .chain(std::iter::once(self.v.nil_degree()))
            .max()
            .unwrap_or(0);
        inner + usize::from(self.d.is_some())
    }
}

/// First order in `w` and in `w̄` separately, keeping the mixed block:
/// `v + Σ a_j ε_j + Σ b_k η_k + Σ h_{jk} ε_j η_k` with `ε_i ε_j = η_i η_j = 0`.
///
/// This is the flat form of `Grad<Grad<C64>>` used for metric tensors. Blocks
/// are stored only when present, so a product of a `w`-only and a `w̄`-only
/// factor costs one outer product.
#[derive(Clone, Debug)]
pub struct Mixed {
    n: usize,
    v: C64,
    dz: Option<Vec<C64>>,
    dzb: Option<Vec<C64>>,
    // row-major n × n, h[j * n + k] is the coefficient of ε_j η_k
    h: Option<Vec<C64>>,
}

fn opt_combine(a: &Option<Vec<C64>>, b: &Option<Vec<C64>>, sign: f64) -> Option<Vec<C64>> {
    match (a, b) {
        (None, None) => None,
        (Some(x), None) => Some(x.clone()),
        (None, Some(y)) => Some(y.iter().map(|q| q * sign).collect()),
        (Some(x), Some(y)) => Some(x.iter().zip(y).map(|(p, q)| p + q * sign).collect()),
    }
}

fn opt_scaled(a: &Option<Vec<C64>>, k: C64) -> Option<Vec<C64>> {
    a.as_ref().map(|x| x.iter().map(|p| p * k).collect())
}

fn axpy(acc: &mut Option<Vec<C64>>, x: &[C64], k: C64) {
    match acc {
        Some(buf) => buf.iter_mut().zip(x).for_each(|(o, p)| *o += p * k),
        None => *acc = Some(x.iter().map(|p| p * k).collect()),
    }
}

fn accumulate(acc: &mut Option<Vec<C64>>, len: usize, f: impl FnOnce(&mut [C64])) {
    let buf = acc.get_or_insert_with(|| vec![C64::new(0.0, 0.0); len]);
    f(buf);
}

impl Mixed {
    /// Width inferred from whichever operand carries blocks.
    fn width(&self, other: &Self) -> usize {
        self.n.max(other.n)
    }

    pub fn constant_value(v: C64) -> Self {
        Mixed {
            n: 0,
            v,
            dz: None,
            dzb: None,
            h: None,
        }
    }

    /// `v + ε_var`.
    pub fn seed_z(n: usize, v: C64, var: usize) -> Self {
        let mut d = vec![C64::new(0.0, 0.0); n];
        d[var] = C64::new(1.0, 0.0);
        Mixed {
            n,
            v,
            dz: Some(d),
            dzb: None,
            h: None,
        }
    }

    /// `v + η_var`.
    pub fn seed_zb(n: usize, v: C64, var: usize) -> Self {
        let mut d = vec![C64::new(0.0, 0.0); n];
        d[var] = C64::new(1.0, 0.0);
        Mixed {
            n,
            v,
            dz: None,
            dzb: Some(d),
            h: None,
        }
    }

    /// `∂_{w_j} ∂_{w̄_k}` at the expansion point.
    pub fn mixed(&self, j: usize, k: usize) -> C64 {
        self.h
            .as_ref()
            .map_or(C64::new(0.0, 0.0), |h| h[j * self.n + k])
    }

    pub fn dz(&self, j: usize) -> C64 {
        self.dz.as_ref().map_or(C64::new(0.0, 0.0), |d| d[j])
    }

    pub fn dzb(&self, k: usize) -> C64 {
        self.dzb.as_ref().map_or(C64::new(0.0, 0.0), |d| d[k])
    }
}

impl Scalar for Mixed {
    fn from_c64(c: C64) -> Self {
        Mixed::constant_value(c)
    }

    fn value(&self) -> C64 {
        self.v
    }

    fn add_ref(&self, other: &Self) -> Self {
        Mixed {
            n: self.width(other),
            v: self.v + other.v,
            dz: opt_combine(&self.dz, &other.dz, 1.0),
            dzb: opt_combine(&self.dzb, &other.dzb, 1.0),
            h: opt_combine(&self.h, &other.h, 1.0),
        }
    }

    fn sub_ref(&self, other: &Self) -> Self {
        Mixed {
            n: self.width(other),
            v: self.v - other.v,
            dz: opt_combine(&self.dz, &other.dz, -1.0),
            dzb: opt_combine(&self.dzb, &other.dzb, -1.0),
            h: opt_combine(&self.h, &other.h, -1.0),
        }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let n = self.width(other);
        let (a, b) = (self.v, other.v);
        let mut dz = None;
        let mut dzb = None;
        let mut h = None;
        for (src, k) in [(&self.dz, b), (&other.dz, a)] {
            if let Some(x) = src {
                axpy(&mut dz, x, k);
            }
        }
        for (src, k) in [(&self.dzb, b), (&other.dzb, a)] {
            if let Some(x) = src {
                axpy(&mut dzb, x, k);
            }
        }
        for (src, k) in [(&self.h, b), (&other.h, a)] {
            if let Some(x) = src {
                axpy(&mut h, x, k);
            }
        }
        for (left, right) in [(&self.dz, &other.dzb), (&other.dz, &self.dzb)] {
            if let (Some(l), Some(r)) = (left, right) {
                accumulate(&mut h, n * n, |buf| {
                    for (j, lj) in l.iter().enumerate() {
                        if *lj == C64::new(0.0, 0.0) {
                            continue;
                        }
                        for (o, rk) in buf[j * n..(j + 1) * n].iter_mut().zip(r) {
                            *o += lj * rk;
                        }
                    }
                });
            }
        }
        Mixed {
            n,
            v: a * b,
            dz,
            dzb,
            h,
        }
    }

    fn scale(&self, c: C64) -> Self {
        Mixed {
            n: self.n,
            v: self.v * c,
            dz: opt_scaled(&self.dz, c),
            dzb: opt_scaled(&self.dzb, c),
            h: opt_scaled(&self.h, c),
        }
    }

    fn is_zero(&self) -> bool {
        let zero = |o: &Option<Vec<C64>>| {
            o.as_ref()
                .is_none_or(|x| x.iter().all(|c| c.re == 0.0 && c.im == 0.0))
        };
        self.v.re == 0.0 && self.v.im == 0.0 && zero(&self.dz) && zero(&self.dzb) && zero(&self.h)
    }

    fn nil_degree(&self) -> usize {
        let first = usize::from(self.dz.is_some()) + usize::from(self.dzb.is_some());
        first.max(usize::from(self.h.is_some()))
    }
}

impl Add for Mixed {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.add_ref(&rhs)
    }
}

impl Sub for Mixed {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.sub_ref(&rhs)
    }
}

impl Mul for Mixed {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl Neg for Mixed {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(C64::new(-1.0, 0.0))
    }
}

/// Second order in one direction `ε` and first order in `w̄`:
/// `Σ_{m ≤ 2} ε^m (c_m + Σ_k d_{m,k} η_k)` with `ε³ = 0`, `η_i η_j = 0`.
#[derive(Clone, Debug)]
pub struct Directional {
    n: usize,
    c: [C64; 3],
    d: [Option<Vec<C64>>; 3],
}

impl Directional {
    /// `value + ε · dir`.
    pub fn along(value: C64, dir: C64) -> Self {
        Directional {
            n: 0,
            c: [value, dir, C64::new(0.0, 0.0)],
            d: [None, None, None],
        }
    }

    /// `value + η_var` among `n` antiholomorphic variables.
    pub fn seed_zb(n: usize, value: C64, var: usize) -> Self {
        let mut d = vec![C64::new(0.0, 0.0); n];
        d[var] = C64::new(1.0, 0.0);
        Directional {
            n,
            c: [value, C64::new(0.0, 0.0), C64::new(0.0, 0.0)],
            d: [Some(d), None, None],
        }
    }

    /// `∂_ε^m ∂_{w̄_k}` at the expansion point.
    pub fn derivative_zb(&self, m: usize, k: usize) -> C64 {
        self.d[m].as_ref().map_or(C64::new(0.0, 0.0), |d| d[k]) * factorial(m)
    }

    fn lift(
        &self,
        f: impl Fn(&Option<Vec<C64>>) -> Option<Vec<C64>>,
        g: impl Fn(C64) -> C64,
    ) -> Self {
        Directional {
            n: self.n,
            c: self.c.map(g),
            d: [f(&self.d[0]), f(&self.d[1]), f(&self.d[2])],
        }
    }

    fn zip(&self, other: &Self, sign: f64) -> Self {
        Directional {
            n: self.n.max(other.n),
            c: [0, 1, 2].map(|m| self.c[m] + other.c[m] * sign),
            d: [0, 1, 2].map(|m| opt_combine(&self.d[m], &other.d[m], sign)),
        }
    }
}

impl Scalar for Directional {
    fn from_c64(c: C64) -> Self {
        Directional::along(c, C64::new(0.0, 0.0))
    }

    fn value(&self) -> C64 {
        self.c[0]
    }

    fn add_ref(&self, other: &Self) -> Self {
        self.zip(other, 1.0)
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self.zip(other, -1.0)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let n = self.n.max(other.n);
        let mut c = [C64::new(0.0, 0.0); 3];
        let mut d: [Option<Vec<C64>>; 3] = [None, None, None];
        for m in 0..3 {
            for a in 0..=m {
                let b = m - a;
                c[m] += self.c[a] * other.c[b];
                for (src, k) in [(&other.d[b], self.c[a]), (&self.d[a], other.c[b])] {
                    if let Some(x) = src {
                        if k != C64::new(0.0, 0.0) {
                            axpy(&mut d[m], x, k);
                        }
                    }
                }
            }
        }
        Directional { n, c, d }
    }

    fn scale(&self, k: C64) -> Self {
        self.lift(|o| opt_scaled(o, k), |x| x * k)
    }

    fn is_zero(&self) -> bool {
        let zero = |o: &Option<Vec<C64>>| {
            o.as_ref()
                .is_none_or(|x| x.iter().all(|c| c.re == 0.0 && c.im == 0.0))
        };
        self.c.iter().all(|x| x.re == 0.0 && x.im == 0.0) && self.d.iter().all(zero)
    }

    fn nil_degree(&self) -> usize {
        let zero = C64::new(0.0, 0.0);
        let eps =
            self.c[1] != zero || self.c[2] != zero || self.d[1].is_some() || self.d[2].is_some();
        usize::from(eps) * 2 + usize::from(self.d[0].is_some())
    }
}

impl Add for Directional {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.add_ref(&rhs)
    }
}

impl Sub for Directional {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.sub_ref(&rhs)
    }
}

impl Mul for Directional {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl Neg for Directional {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(C64::new(-1.0, 0.0))
    }
}

macro_rules! forward_ops {
    ($ty:ident) => {
        impl<R: Scalar> Add for $ty<R> {
            type Output = Self;
            fn add(self, rhs: Self) -> Self {
                self.add_ref(&rhs)
            }
        }
        impl<R: Scalar> Sub for $ty<R> {
            type Output = Self;
            fn sub(self, rhs: Self) -> Self {
                self.sub_ref(&rhs)
            }
        }
        impl<R: Scalar> Mul for $ty<R> {
            type Output = Self;
            fn mul(self, rhs: Self) -> Self {
                self.mul_ref(&rhs)
            }
        }
        impl<R: Scalar> Neg for $ty<R> {
            type Output = Self;
            fn neg(self) -> Self {
                self.scale(C64::new(-1.0, 0.0))
            }
        }
    };
}

forward_ops!(Jet);
forward_ops!(Grad);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    fn var(layout: &'static JetLayout, x: f64, i: usize) -> Jet {
        Jet::seeded(layout, c(x, 0.0), i, c(1.0, 0.0))
    }

    #[test]
    fn layout_sizes() {
        assert_eq!(JetLayout::total_degree(4, 3).len(), 35);
        assert_eq!(JetLayout::total_degree(4, 4).len(), 70);
        assert_eq!(JetLayout::total_degree(2, 2).len(), 6);
        assert_eq!(JetLayout::with_caps(&[1, 1, 1, 1], 4).len(), 16);
        assert_eq!(JetLayout::with_caps(&[2, 1], 3).len(), 6);
        assert!(std::ptr::eq(
            JetLayout::total_degree(3, 2),
            JetLayout::total_degree(3, 2)
        ));
    }

    #[test]
    fn polynomial_product_coefficients() {
        // (1 + x + y)^3 truncated at order 3: coefficient of x y is 6, of x^2 y is 3
        let l = JetLayout::total_degree(2, 3);
        let s = var(l, 1.0, 0) + var(l, 0.0, 1);
        let cube = s.clone() * s.clone() * s;
        assert_eq!(cube.coeff(&[1, 1]), c(6.0, 0.0));
        assert_eq!(cube.coeff(&[2, 1]), c(3.0, 0.0));
        assert_eq!(cube.coeff(&[0, 0]), c(1.0, 0.0));
        assert_eq!(cube.derivative(&[2, 1]), c(6.0, 0.0));
    }

    #[test]
    fn elementary_functions_match_closed_forms() {
        // f(x) = ln(x) at x = 2: f'''(2) = 2 / 8
        let l = JetLayout::total_degree(1, 4);
        let x = var(l, 2.0, 0);
        let lx = x.ln();
        assert!((lx.derivative(&[3]) - c(0.25, 0.0)).norm() < 1e-14);
        assert!((lx.derivative(&[4]) - c(-6.0 / 16.0, 0.0)).norm() < 1e-14);
        // exp(ln x) = x
        let back = lx.exp();
        for m in 0..=4u8 {
            let expected = match m {
                0 => 2.0,
                1 => 1.0,
                _ => 0.0,
            };
            assert!(
                (back.derivative(&[m]) - c(expected, 0.0)).norm() < 1e-13,
                "order {m}"
            );
        }
        // sqrt(x)^2 = x and x * recip(x) = 1
        let sq = x.sqrt();
        let prod = sq.clone() * sq;
        assert!((prod.derivative(&[1]) - c(1.0, 0.0)).norm() < 1e-14);
        assert!((prod.derivative(&[3])).norm() < 1e-13);
        let one = x.clone() * x.recip();
        assert!((one.derivative(&[2])).norm() < 1e-14);
    }

    #[test]
    fn capped_layout_keeps_mixed_terms() {
        let l = JetLayout::with_caps(&[1, 1], 2);
        let x = var(l, 0.5, 0);
        let y = var(l, 0.25, 1);
        // d/dx d/dy of exp(x y) = (1 + xy) exp(xy)
        let e = (x * y).exp();
        let xy: f64 = 0.125;
        assert!((e.coeff(&[1, 1]) - c((1.0 + xy) * xy.exp(), 0.0)).norm() < 1e-14);
        assert_eq!(e.coeff(&[2, 0]), c(0.0, 0.0));
    }

    #[test]
    fn grad_nested_mixed_partials() {
        // f(s, t) = ln(1 + s t + s) with s, t in separate levels
        let n = 1;
        type G2 = Grad<Grad<C64>>;
        let s = G2::seeded(
            n,
            Grad::constant(c(0.3, 0.0)),
            0,
            Grad::constant(c(1.0, 0.0)),
        );
        let t = G2::constant(Grad::seeded(n, c(0.2, 0.0), 0, c(1.0, 0.0)));
        let f = (G2::one() + s.clone() * t + s).ln();
        // ∂s∂t ln(1 + s t + s) = [u·1 - s(t+1)... ] evaluate by hand:
        // g = 1 + s t + s, g_s = t + 1, g_t = s, g_st = 1
        // ∂s∂t ln g = g_st / g - g_s g_t / g^2
        let (sv, tv) = (0.3, 0.2);
        let g = 1.0 + sv * tv + sv;
        let expected = 1.0 / g - (tv + 1.0) * sv / (g * g);
        let mixed = f.partial(0).partial(0);
        assert!((mixed - c(expected, 0.0)).norm() < 1e-14);
        assert_eq!(f.nil_degree(), 2);

        let s = Mixed::seed_z(1, c(sv, 0.0), 0);
        let t = Mixed::seed_zb(1, c(tv, 0.0), 0);
        let f = (Mixed::one() + s.clone() * t + s).ln();
        assert!((f.mixed(0, 0) - c(expected, 0.0)).norm() < 1e-14);
        assert!((f.dz(0) - c((tv + 1.0) / g, 0.0)).norm() < 1e-14);
        assert!((f.dzb(0) - c(sv / g, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn directional_matches_closed_form() {
        // f(x, y) = ln(1 + x y) along x = a + ε, y = b + η
        let (a, b) = (0.3, -0.4);
        let x = Directional::along(c(a, 0.0), c(1.0, 0.0));
        let y = Directional::seed_zb(1, c(b, 0.0), 0);
        let f = (Directional::one() + x * y).ln();
        let g = 1.0 + a * b;
        assert!((f.derivative_zb(0, 0) - c(a / g, 0.0)).norm() < 1e-14);
        assert!((f.derivative_zb(1, 0) - c(1.0 / (g * g), 0.0)).norm() < 1e-14);
        assert!((f.derivative_zb(2, 0) - c(-2.0 * b / (g * g * g), 0.0)).norm() < 1e-14);
        assert_eq!(f.nil_degree(), 3);
    }
}
