use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cell::RefCell;

use super::distribution::check_probabilities;
use crate::error::{Error, Result};
use crate::math::{log2, plogp};

/// Conditioning events lighter than this contribute nothing to conditional
/// entropies.
pub const NEGLIGIBLE_EVENT: f64 = 1e-15;

/// Mutual information values in `[-MI_CLAMP_TOL, 0)` are reported as zero.
pub const MI_CLAMP_TOL: f64 = 1e-12;

/// Bit set of variable positions in a [`JointDistribution`].
pub type VarMask = u32;

const MAX_VARS: usize = 12;

/// Index arithmetic for a dense table with fixed per-variable sizes.
///
/// For every variable subset the layout can produce the map from a full-table
/// index to the index into the marginal table over that subset. Maps depend
/// only on the sizes, so one layout can be shared across many tables.
#[derive(Debug)]
pub struct TableLayout {
    sizes: Vec<usize>,
    maps: RefCell<Vec<Option<Vec<u32>>>>,
}

impl TableLayout {
    pub fn new(sizes: &[usize]) -> Self {
        assert!(sizes.len() <= MAX_VARS, "too many variables");
        Self {
            sizes: sizes.to_vec(),
            maps: RefCell::new(alloc::vec![None; 1 << sizes.len()]),
        }
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn len(&self) -> usize {
        self.sizes.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn all(&self) -> VarMask {
        (1 << self.sizes.len()) - 1
    }

    /// Number of cells in the marginal table over `mask`.
    pub fn marginal_len(&self, mask: VarMask) -> usize {
        self.sizes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &s)| s)
            .product()
    }

    fn ensure_map(&self, mask: VarMask) {
        if self.maps.borrow()[mask as usize].is_none() {
            let map = self.build_map(mask);
            self.maps.borrow_mut()[mask as usize] = Some(map);
        }
    }

    fn with_map<R>(&self, mask: VarMask, f: impl FnOnce(&[u32]) -> R) -> R {
        self.ensure_map(mask);
        let maps = self.maps.borrow();
        f(maps[mask as usize].as_deref().unwrap_or_default())
    }

    fn build_map(&self, mask: VarMask) -> Vec<u32> {
        let k = self.sizes.len();
        // Stride of each kept variable inside the marginal table; the last
        // kept variable varies fastest, matching the full table.
        let mut sub_stride = alloc::vec![0usize; k];
        let mut acc = 1usize;
        for i in (0..k).rev() {
            if mask & (1 << i) != 0 {
                sub_stride[i] = acc;
                acc *= self.sizes[i];
            }
        }
        let total = self.len();
        let mut map = Vec::with_capacity(total);
        let mut digits = alloc::vec![0usize; k];
        let mut sub = 0usize;
        for _ in 0..total {
            map.push(sub as u32);
            // odometer increment, last variable fastest
            for i in (0..k).rev() {
                digits[i] += 1;
                sub += sub_stride[i];
                if digits[i] < self.sizes[i] {
                    break;
                }
                sub -= sub_stride[i] * digits[i];
                digits[i] = 0;
            }
        }
        map
    }

    pub fn marginalize(&self, mass: &[f64], mask: VarMask) -> Vec<f64> {
        let mut out = alloc::vec![0.0; self.marginal_len(mask)];
        self.with_map(mask, |map| {
            for (&p, &j) in mass.iter().zip(map) {
                out[j as usize] += p;
            }
        });
        out
    }

    /// For each cell of the `outer` marginal, the index of the cell of the
    /// `inner` marginal it projects to. `inner` must be a subset of `outer`.
    fn projection(&self, outer: VarMask, inner: VarMask) -> Vec<u32> {
        self.ensure_map(outer);
        self.ensure_map(inner);
        let maps = self.maps.borrow();
        let (outer_map, inner_map) = (
            maps[outer as usize].as_deref().unwrap_or_default(),
            maps[inner as usize].as_deref().unwrap_or_default(),
        );
        let mut out = alloc::vec![0u32; self.marginal_len(outer)];
        for (&o, &i) in outer_map.iter().zip(inner_map) {
            out[o as usize] = i;
        }
        out
    }
}

/// Lazily memoized information measures over one dense table.
pub struct InfoEvaluator<'a> {
    layout: &'a TableLayout,
    mass: &'a [f64],
    marginals: RefCell<Vec<Option<Vec<f64>>>>,
}

impl<'a> InfoEvaluator<'a> {
    pub fn new(layout: &'a TableLayout, mass: &'a [f64]) -> Self {
        debug_assert_eq!(layout.len(), mass.len());
        Self {
            layout,
            mass,
            marginals: RefCell::new(alloc::vec![None; 1 << layout.sizes().len()]),
        }
    }

    fn ensure_marginal(&self, mask: VarMask) {
        if self.marginals.borrow()[mask as usize].is_none() {
            let m = self.layout.marginalize(self.mass, mask);
            self.marginals.borrow_mut()[mask as usize] = Some(m);
        }
    }

    fn with_marginal<R>(&self, mask: VarMask, f: impl FnOnce(&[f64]) -> R) -> R {
        self.ensure_marginal(mask);
        let cache = self.marginals.borrow();
        f(cache[mask as usize].as_deref().unwrap_or_default())
    }

    pub fn marginal(&self, mask: VarMask) -> Vec<f64> {
        self.with_marginal(mask, <[f64]>::to_vec)
    }

    /// `H(A)` in bits.
    pub fn entropy(&self, a: VarMask) -> f64 {
        self.with_marginal(a, |m| m.iter().map(|&p| plogp(p)).sum())
    }

    /// `H(A | C)` in bits, skipping conditioning events below
    /// [`NEGLIGIBLE_EVENT`].
    pub fn conditional_entropy(&self, a: VarMask, given: VarMask) -> f64 {
        let a = a & !given;
        if given == 0 {
            return self.entropy(a);
        }
        if a == 0 {
            return 0.0;
        }
        let joint = a | given;
        let proj = self.layout.projection(joint, given);
        self.ensure_marginal(given);
        self.ensure_marginal(joint);
        let cache = self.marginals.borrow();
        let pc = cache[given as usize].as_deref().unwrap_or_default();
        let pac = cache[joint as usize].as_deref().unwrap_or_default();
        let mut h = 0.0;
        for (&p, &c) in pac.iter().zip(&proj) {
            let q = pc[c as usize];
            if q >= NEGLIGIBLE_EVENT && p > 0.0 {
                h += p * log2(q / p);
            }
        }
        h
    }

    /// `I(A; B | C)` before clamping.
    pub fn mutual_information_raw(&self, a: VarMask, b: VarMask, given: VarMask) -> f64 {
        self.conditional_entropy(a, given) + self.conditional_entropy(b, given)
            - self.conditional_entropy(a | b, given)
    }

    /// `I(A; B | C)`, never negative.
    pub fn mutual_information(&self, a: VarMask, b: VarMask, given: VarMask) -> f64 {
        let raw = self.mutual_information_raw(a, b, given);
        debug_assert!(raw >= -MI_CLAMP_TOL, "mutual information {raw} is negative");
        raw.max(0.0)
    }
}

/// A dense joint law over named finite variables.
#[derive(Debug)]
pub struct JointDistribution {
    names: Vec<String>,
    layout: TableLayout,
    mass: Vec<f64>,
}

impl Clone for JointDistribution {
    fn clone(&self) -> Self {
        Self {
            names: self.names.clone(),
            layout: TableLayout::new(self.layout.sizes()),
            mass: self.mass.clone(),
        }
    }
}

impl PartialEq for JointDistribution {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
            && self.layout.sizes() == other.layout.sizes()
            && self.mass == other.mass
    }
}

impl JointDistribution {
    /// Builds a joint table; the last variable varies fastest in `mass`.
    pub fn new<S: AsRef<str>>(vars: &[(S, usize)], mass: Vec<f64>) -> Result<Self> {
        if vars.len() > MAX_VARS {
            return Err(Error::DimensionMismatch {
                what: "number of variables",
                expected: MAX_VARS,
                found: vars.len(),
            });
        }
        let mut names: Vec<String> = Vec::with_capacity(vars.len());
        for (name, size) in vars {
            let name = name.as_ref();
            if *size == 0 {
                return Err(Error::EmptyAlphabet);
            }
            if names.iter().any(|n| n == name) {
                return Err(Error::OverlappingGroups);
            }
            names.push(name.to_string());
        }
        let sizes: Vec<usize> = vars.iter().map(|(_, s)| *s).collect();
        let layout = TableLayout::new(&sizes);
        if mass.len() != layout.len() {
            return Err(Error::DimensionMismatch {
                what: "joint table entries",
                expected: layout.len(),
                found: mass.len(),
            });
        }
        check_probabilities(&mass)?;
        Ok(Self {
            names,
            layout,
            mass,
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn sizes(&self) -> &[usize] {
        self.layout.sizes()
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    pub fn layout(&self) -> &TableLayout {
        &self.layout
    }

    pub fn evaluator(&self) -> InfoEvaluator<'_> {
        InfoEvaluator::new(&self.layout, &self.mass)
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn mask(&self, names: &[&str]) -> Result<VarMask> {
        let mut mask = 0;
        for name in names {
            let bit = 1 << self.var_index(name)?;
            if mask & bit != 0 {
                return Err(Error::OverlappingGroups);
            }
            mask |= bit;
        }
        Ok(mask)
    }

    /// Marginal over `keep`, with variables in their original order.
    pub fn marginal(&self, keep: &[&str]) -> Result<JointDistribution> {
        let mask = self.mask(keep)?;
        let vars: Vec<(&str, usize)> = self
            .names
            .iter()
            .zip(self.sizes())
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, (n, &s))| (n.as_str(), s))
            .collect();
        let mass = self.layout.marginalize(&self.mass, mask);
        JointDistribution::new(&vars, mass)
    }

    pub fn entropy(&self, vars: &[&str]) -> Result<f64> {
        Ok(self.evaluator().entropy(self.mask(vars)?))
    }

    pub fn conditional_entropy(&self, vars: &[&str], given: &[&str]) -> Result<f64> {
        let (a, c) = (self.mask(vars)?, self.mask(given)?);
        if a & c != 0 {
            return Err(Error::OverlappingGroups);
        }
        Ok(self.evaluator().conditional_entropy(a, c))
    }

    fn groups(&self, a: &[&str], b: &[&str], given: &[&str]) -> Result<(VarMask, VarMask, VarMask)> {
        let (a, b, c) = (self.mask(a)?, self.mask(b)?, self.mask(given)?);
        if a & b != 0 || a & c != 0 || b & c != 0 {
            return Err(Error::OverlappingGroups);
        }
        Ok((a, b, c))
    }

    /// `I(A; B | C)` before clamping; exposed for invariant checks.
    pub fn mutual_information_raw(&self, a: &[&str], b: &[&str], given: &[&str]) -> Result<f64> {
        let (a, b, c) = self.groups(a, b, given)?;
        Ok(self.evaluator().mutual_information_raw(a, b, c))
    }

    pub fn mutual_information(&self, a: &[&str], b: &[&str], given: &[&str]) -> Result<f64> {
        let (a, b, c) = self.groups(a, b, given)?;
        Ok(self.evaluator().mutual_information(a, b, c))
    }
}

/// `I(A; B | C)` in bits over the named variables of `j`.
pub fn mutual_information(
    j: &JointDistribution,
    group_a: &[&str],
    group_b: &[&str],
    given: &[&str],
) -> Result<f64> {
    j.mutual_information(group_a, group_b, given)
}
