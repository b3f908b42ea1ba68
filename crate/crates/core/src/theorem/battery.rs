//! A finite, deterministic test universe of indecomposable modules.
//!
//! Seeds (simples, projectives, injectives, radical layers, socle quotients,
//! caller-supplied modules and random extensions) are decomposed and closed
//! under `τ`, `τ⁻¹` and middle terms of almost split sequences. The seeds
//! contain `rad P` and `I/soc I`, so the closure is a union of components of
//! the Auslander–Reiten quiver. When it stops growing within the limits and
//! the algebra is connected, it is therefore every indecomposable, and the
//! battery is marked complete.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::Algebra;
use crate::error::Result;
use crate::linalg::Vector;
use crate::module::{ar_sequence, decompose, is_isomorphic, tau, tau_inverse, ExtSpace, Module};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BatteryOptions {
    pub max_dim: usize,
    pub cap: usize,
    pub seed: u64,
    /// Number of random extensions between seed pairs.
    pub extensions: usize,
}

impl Default for BatteryOptions {
    fn default() -> Self {
        BatteryOptions { max_dim: 16, cap: 40, seed: 0, extensions: 8 }
    }
}

#[derive(Clone, Debug)]
pub struct Battery {
    pub modules: Vec<Module>,
    /// Every indecomposable module is in the list, up to isomorphism.
    pub complete: bool,
}

impl Battery {
    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    /// Short label such as `M3[1,1,0]`.
    pub fn label(&self, i: usize) -> String {
        module_label(i, &self.modules[i])
    }
}

pub fn module_label(i: usize, m: &Module) -> String {
    let dims: Vec<String> = m.dims().iter().map(|d| d.to_string()).collect();
    format!("M{}[{}]", i + 1, dims.join(","))
}

/// `true` if the vertices are linked through nonzero corners `e_u A e_v`.
pub fn is_connected(alg: &Algebra) -> bool {
    let n = alg.n_vertices();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for v in 0..n {
            if !seen[v] && (alg.corner_dim(u, v) > 0 || alg.corner_dim(v, u) > 0) {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

struct Collector {
    found: Vec<Module>,
    max_dim: usize,
    cap: usize,
    dropped: bool,
}

impl Collector {
    /// Adds the indecomposable summands of `m`; returns how many were new.
    fn add(&mut self, m: &Module) -> Result<usize> {
        if m.is_zero() {
            return Ok(0);
        }
        let mut new = 0;
        for (s, _) in decompose(m)?.multiplicities() {
            if s.dim() > self.max_dim {
                self.dropped = true;
                continue;
            }
            let mut seen = false;
            for t in &self.found {
                if t.dims() == s.dims() && is_isomorphic(s, t)? {
                    seen = true;
                    break;
                }
            }
            if seen {
                continue;
            }
            if self.found.len() >= self.cap {
                self.dropped = true;
                continue;
            }
            self.found.push(s.clone());
            new += 1;
        }
        Ok(new)
    }
}

fn seeds(alg: &Arc<Algebra>) -> Result<Vec<Module>> {
    let mut out = Vec::new();
    for v in 0..alg.n_vertices() {
        out.push(Module::simple(alg, v));
    }
    for v in 0..alg.n_vertices() {
        let p = Module::projective(alg, v);
        out.push(p.clone());
        let i = Module::injective(alg, v);
        let soc = i.socle();
        if soc.dim() < i.dim() {
            out.push(i.quotient(&soc)?.0);
        }
        out.push(i);
        for k in 1.. {
            let r = p.radical_power(k);
            if r.is_zero() {
                break;
            }
            out.push(p.submodule(&r)?.0);
            let s = p.socle_power(k)?;
            if s.dim() == p.dim() {
                break;
            }
            out.push(p.quotient(&s)?.0);
        }
    }
    Ok(out)
}

/// Builds the battery. `extra` modules (for example `H⁰(P)`) are decomposed
/// and added to the seeds.
pub fn module_battery(alg: &Arc<Algebra>, extra: &[Module], opts: &BatteryOptions) -> Result<Battery> {
    let mut c = Collector { found: Vec::new(), max_dim: opts.max_dim, cap: opts.cap, dropped: false };
    let mut base = seeds(alg)?;
    base.extend(extra.iter().cloned());
    for m in &base {
        c.add(m)?;
    }
    // random extensions between the seeds found so far
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let f = alg.field();
    let k = c.found.len();
    let mut made = 0;
    'ext: for i in 0..k {
        for j in 0..k {
            if made >= opts.extensions {
                break 'ext;
            }
            let (m, n) = (c.found[i].clone(), c.found[j].clone());
            let ext = ExtSpace::new(&m, &n, 1)?;
            if ext.dim() == 0 {
                continue;
            }
            let class: Vector = (0..ext.dim()).map(|_| f.random(&mut rng)).collect();
            if class.iter().all(|x| x.is_zero()) {
                continue;
            }
            let e = ext.extension(&class)?;
            c.add(&e.seq.y)?;
            made += 1;
        }
    }
    // closure under τ, τ⁻¹ and almost split sequences
    let mut next = 0;
    while next < c.found.len() {
        let m = c.found[next].clone();
        next += 1;
        let t = tau(&m)?;
        c.add(&t)?;
        c.add(&tau_inverse(&m)?)?;
        if !t.is_zero() {
            let seq = ar_sequence(&m)?;
            c.add(&seq.y)?;
        }
    }
    let complete = !c.dropped && is_connected(alg);
    let mut modules = c.found;
    modules.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| b.dims().cmp(a.dims())));
    Ok(Battery { modules, complete })
}
