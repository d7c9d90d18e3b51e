//! Evaluation of the invariant of a closed braid.
//!
//! Strand 0 is held open with input state `v_0`; the other strands are
//! closed with the weights `mu`. For each basis state `x` of the closed
//! strands we push `v_0 ⊗ x` through the braid letter by letter and read
//! back the coefficient of `v_0 ⊗ x`:
//!
//! `LG(β) = Σ_x μ(x) ⟨0,x| β |0,x⟩`.
//!
//! Each letter only touches two adjacent tensor factors, so one step is a
//! sparse local update of the current state vector.

mod kernel;
mod reference;

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use log::{debug, trace};
use num_bigint::BigInt;
use rayon::prelude::*;
use thiserror::Error;

use crate::braid::BraidWord;
use crate::laurent::LaurentPoly2;
use crate::rep::{Invariant, RepresentationData};
use kernel::{Acc, Coef, KPoly, Layout};

pub use reference::{evaluate_reference, EvaluationState};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("engine assertion failed: {0}")]
    Assertion(String),
    #[error("unsupported representation: {0}")]
    Unsupported(String),
}

/// Limits for one evaluation.
#[derive(Clone, Debug)]
pub struct EvaluationBudget {
    pub max_strands: usize,
    /// Upper bound on `dim^strands`, the size of the dense state.
    pub max_state: usize,
    pub max_time: Option<Duration>,
    /// Split the closed-strand states over the rayon pool.
    pub parallel: bool,
}

impl Default for EvaluationBudget {
    fn default() -> Self {
        EvaluationBudget { max_strands: 12, max_state: 1 << 22, max_time: None, parallel: true }
    }
}

fn builtin(inv: Invariant) -> &'static RepresentationData {
    static LG21: OnceLock<RepresentationData> = OnceLock::new();
    static LG11: OnceLock<RepresentationData> = OnceLock::new();
    let cell = match inv {
        Invariant::LG21 => &LG21,
        Invariant::LG11 => &LG11,
    };
    cell.get_or_init(|| RepresentationData::builtin(inv))
}

/// The bundled representation data for `inv`.
pub fn representation(inv: Invariant) -> &'static RepresentationData {
    builtin(inv)
}

/// `LG^{2,1}` of the closure of `braid`.
pub fn lg21(braid: &BraidWord) -> Result<LaurentPoly2, EngineError> {
    evaluate_invariant(braid, builtin(Invariant::LG21), &EvaluationBudget::default())
}

/// `LG^{1,1}`, which is the Alexander–Conway polynomial in `t = p²`.
pub fn lg11(braid: &BraidWord) -> Result<LaurentPoly2, EngineError> {
    evaluate_invariant(braid, builtin(Invariant::LG11), &EvaluationBudget::default())
}

pub fn evaluate_invariant(
    braid: &BraidWord,
    rep: &RepresentationData,
    budget: &EvaluationBudget,
) -> Result<LaurentPoly2, EngineError> {
    let s = braid.strands();
    if s > budget.max_strands {
        return Err(EngineError::BudgetExceeded(format!("{s} strands (limit {})", budget.max_strands)));
    }
    let bits = usize::BITS - (rep.dim - 1).leading_zeros();
    let bits = bits.max(1) as usize;
    if bits * s > 30 || (1usize << (bits * s)) > budget.max_state {
        return Err(EngineError::BudgetExceeded(format!("state space of {s} strands in dimension {}", rep.dim)));
    }
    let started = Instant::now();
    let value = match sweep::<i64>(braid, rep, budget, bits, started)? {
        Some(v) => v,
        None => {
            debug!("coefficient overflow in i64 sweep, redoing with big integers");
            sweep::<BigInt>(braid, rep, budget, bits, started)?.expect("big integers do not overflow")
        }
    };
    if !value.radical.is_zero() {
        return Err(EngineError::Assertion(format!("nonzero radical part {}", value.radical)));
    }
    if !value.base.has_integral_exponents() {
        return Err(EngineError::Assertion(format!("half-integral exponents in {}", value.base)));
    }
    Ok(value.base)
}

struct Value {
    base: LaurentPoly2,
    radical: LaurentPoly2,
}

struct Entry<C> {
    input: usize,
    base: KPoly<C>,
    rad: KPoly<C>,
    rad_d: KPoly<C>,
}

struct Compiled<C> {
    dim: usize,
    bits: usize,
    layout: Layout,
    // [sign][output pair] -> contributing inputs
    gather: [Vec<Vec<Entry<C>>>; 2],
    mu: Vec<KPoly<C>>,
}

fn exp_bounds(polys: &[&LaurentPoly2]) -> (i32, i32, i32, i32) {
    let mut b = (0, 0, 0, 0);
    for (m, _) in polys.iter().flat_map(|f| f.terms()) {
        b = (b.0.min(m.p2), b.1.max(m.p2), b.2.min(m.q2), b.3.max(m.q2));
    }
    b
}

impl<C: Coef> Compiled<C> {
    fn new(braid: &BraidWord, rep: &RepresentationData, bits: usize) -> Result<Option<Self>, EngineError> {
        if rep.mu.iter().any(|m| !m.radical.is_zero()) {
            return Err(EngineError::Unsupported("weights with a radical part".into()));
        }
        let d = &*rep.discriminant;
        let rad_d: Vec<_> =
            [&rep.r, &rep.r_inv].iter().map(|t| t.values().map(|v| &v.radical * d).collect::<Vec<_>>()).collect();

        // Exponent box: every letter adds at most one term of each entry.
        let (mut plo, mut phi, mut qlo, mut qhi) = (0, 0, 0, 0);
        for (sign, t) in [&rep.r, &rep.r_inv].into_iter().enumerate() {
            let count = braid.letters().iter().filter(|l| (**l < 0) as usize == sign).count() as i32;
            let mut polys: Vec<&LaurentPoly2> = t.values().flat_map(|v| [&v.base, &v.radical]).collect();
            polys.extend(rad_d[sign].iter());
            let b = exp_bounds(&polys);
            plo += count * b.0;
            phi += count * b.1;
            qlo += count * b.2;
            qhi += count * b.3;
        }
        let closed = braid.strands() as i32 - 1;
        let b = exp_bounds(&rep.mu.iter().map(|m| &m.base).collect::<Vec<_>>());
        plo += closed * b.0;
        phi += closed * b.1;
        qlo += closed * b.2;
        qhi += closed * b.3;
        let area = (phi - plo + 1) as i64 * (qhi - qlo + 1) as i64;
        if area > 1 << 26 {
            return Err(EngineError::BudgetExceeded(format!("exponent range of {} letters", braid.len())));
        }
        let layout = Layout::new(plo, phi, qlo, qhi);

        let dim = rep.dim;
        let mut gather: [Vec<Vec<Entry<C>>>; 2] =
            [(0..dim * dim).map(|_| vec![]).collect(), (0..dim * dim).map(|_| vec![]).collect()];
        for (sign, t) in [&rep.r, &rep.r_inv].into_iter().enumerate() {
            for ((k, v), rd) in t.iter().zip(&rad_d[sign]) {
                let (Some(base), Some(rad), Some(rad_d)) =
                    (layout.offsets(&v.base), layout.offsets(&v.radical), layout.offsets(rd))
                else {
                    return Ok(None);
                };
                gather[sign][k[0] * dim + k[1]].push(Entry { input: k[2] * dim + k[3], base, rad, rad_d });
            }
        }
        let Some(mu) = rep.mu.iter().map(|m| layout.offsets(&m.base)).collect() else {
            return Ok(None);
        };
        Ok(Some(Compiled { dim, bits, layout, gather, mu }))
    }
}

#[derive(Clone, Default)]
struct Amp<C> {
    base: KPoly<C>,
    rad: KPoly<C>,
}

impl<C> Amp<C> {
    fn is_zero(&self) -> bool {
        self.base.is_empty() && self.rad.is_empty()
    }
    fn clear(&mut self) {
        self.base.clear();
        self.rad.clear();
    }
}

/// Scratch space for sweeping one column at a time.
struct Worker<'a, C> {
    k: &'a Compiled<C>,
    letters: &'a [i32],
    cur: Vec<Amp<C>>,
    next: Vec<Amp<C>>,
    cur_active: Vec<u32>,
    next_active: Vec<u32>,
    seen: Vec<u32>,
    gen: u32,
    acc_b: Acc<C>,
    acc_r: Acc<C>,
    tot_b: Acc<C>,
    tot_r: Acc<C>,
    tmp: KPoly<C>,
    closed: usize,
    ok: bool,
}

impl<'a, C: Coef> Worker<'a, C> {
    fn new(k: &'a Compiled<C>, letters: &'a [i32], strands: usize) -> Self {
        let n = 1usize << (k.bits * strands);
        let size = k.layout.size;
        Worker {
            k,
            letters,
            cur: vec![Amp::default(); n],
            next: vec![Amp::default(); n],
            cur_active: vec![],
            next_active: vec![],
            seen: vec![0; n],
            gen: 0,
            acc_b: Acc::new(size),
            acc_r: Acc::new(size),
            tot_b: Acc::new(size),
            tot_r: Acc::new(size),
            tmp: vec![],
            closed: strands - 1,
            ok: true,
        }
    }

    /// Adds `μ(x) ⟨0,x| β |0,x⟩` for the closed-strand state `x`.
    fn column(&mut self, x: usize) {
        let k = self.k;
        let t0 = (x << k.bits) as u32;
        self.cur[t0 as usize].base.push((k.layout.origin(), C::one()));
        self.cur_active.push(t0);
        for &l in self.letters {
            self.apply(l);
        }
        let amp = std::mem::take(&mut self.cur[t0 as usize]);
        if !amp.is_zero() {
            // μ(x) = Π μ[x_j], one factor at a time.
            let origin = k.layout.origin();
            let mut w: KPoly<C> = vec![(origin, C::one())];
            let mask = (1 << k.bits) - 1;
            for j in 0..self.closed {
                self.acc_b.add_product(&k.mu[(x >> (k.bits * j)) & mask], &w);
                self.acc_b.drain_into(&mut self.tmp);
                std::mem::swap(&mut w, &mut self.tmp);
            }
            w.iter_mut().for_each(|(key, _)| *key -= origin);
            self.tot_b.add_product(&w, &amp.base);
            self.tot_r.add_product(&w, &amp.rad);
            self.ok &= self.acc_b.ok && self.tot_b.ok && self.tot_r.ok;
        }
        for &t in &self.cur_active {
            self.cur[t as usize].clear();
        }
        self.cur_active.clear();
    }

    fn apply(&mut self, letter: i32) {
        let k = self.k;
        let i = letter.unsigned_abs() as usize;
        let sign = (letter < 0) as usize;
        let (sa, sb) = (k.bits * (i - 1), k.bits * i);
        let mask = (1u32 << k.bits) - 1;
        let hole = !((mask << sa) | (mask << sb));
        let dim = k.dim;
        self.gen = self.gen.wrapping_add(1);
        if self.gen == 0 {
            self.seen.iter_mut().for_each(|s| *s = 0);
            self.gen = 1;
        }
        let gen = self.gen;
        let pair_bits = |p: usize| (((p / dim) as u32) << sa) | (((p % dim) as u32) << sb);
        for idx in 0..self.cur_active.len() {
            let g = self.cur_active[idx] & hole;
            if self.seen[g as usize] == gen {
                continue;
            }
            self.seen[g as usize] = gen;
            for (out, entries) in k.gather[sign].iter().enumerate() {
                let mut any = false;
                for e in entries {
                    let a = &self.cur[(g | pair_bits(e.input)) as usize];
                    if a.is_zero() {
                        continue;
                    }
                    any = true;
                    self.acc_b.add_product(&e.base, &a.base);
                    self.acc_b.add_product(&e.rad_d, &a.rad);
                    self.acc_r.add_product(&e.base, &a.rad);
                    self.acc_r.add_product(&e.rad, &a.base);
                }
                if !any {
                    continue;
                }
                let t = g | pair_bits(out);
                let slot = &mut self.next[t as usize];
                self.acc_b.drain_into(&mut slot.base);
                self.acc_r.drain_into(&mut slot.rad);
                if !slot.is_zero() {
                    self.next_active.push(t);
                }
            }
        }
        self.ok &= self.acc_b.ok && self.acc_r.ok;
        for &t in &self.cur_active {
            self.cur[t as usize].clear();
        }
        self.cur_active.clear();
        std::mem::swap(&mut self.cur, &mut self.next);
        std::mem::swap(&mut self.cur_active, &mut self.next_active);
    }

    fn totals(mut self) -> (KPoly<C>, KPoly<C>, bool) {
        let (mut b, mut r) = (vec![], vec![]);
        self.tot_b.drain_into(&mut b);
        self.tot_r.drain_into(&mut r);
        (b, r, self.ok)
    }
}

/// Runs the sweep with coefficient type `C`; `None` on overflow.
fn sweep<C: Coef>(
    braid: &BraidWord,
    rep: &RepresentationData,
    budget: &EvaluationBudget,
    bits: usize,
    started: Instant,
) -> Result<Option<Value>, EngineError> {
    let Some(k) = Compiled::<C>::new(braid, rep, bits)? else {
        return Ok(None);
    };
    let s = braid.strands();
    let columns: Vec<usize> = columns(rep.dim, bits, s - 1);
    let check_time = || match budget.max_time {
        Some(t) if started.elapsed() > t => {
            Err(EngineError::BudgetExceeded(format!("time limit of {:.1}s", t.as_secs_f64())))
        }
        _ => Ok(()),
    };
    let letters = braid.letters();
    let run = |chunk: &[usize]| -> Result<(KPoly<C>, KPoly<C>, bool), EngineError> {
        let mut w = Worker::new(&k, letters, s);
        for &x in chunk {
            w.column(x);
            if !w.ok {
                return Ok((vec![], vec![], false));
            }
            check_time()?;
        }
        Ok(w.totals())
    };
    let threads = if budget.parallel { rayon::current_num_threads() } else { 1 };
    let chunk = columns.len().div_ceil(threads * 4).max(1);
    trace!("sweep: {} columns, {} letters, box {}", columns.len(), letters.len(), k.layout.size);
    let parts: Vec<_> =
        if threads > 1 { columns.par_chunks(chunk).map(run).collect::<Result<_, _>>()? } else { vec![run(&columns)?] };
    let mut acc_b = Acc::<C>::new(k.layout.size);
    let mut acc_r = Acc::<C>::new(k.layout.size);
    for (b, r, ok) in &parts {
        if !ok {
            return Ok(None);
        }
        acc_b.add_terms(b);
        acc_r.add_terms(r);
    }
    if !(acc_b.ok && acc_r.ok) {
        return Ok(None);
    }
    let (mut b, mut r) = (vec![], vec![]);
    acc_b.drain_into(&mut b);
    acc_r.drain_into(&mut r);
    Ok(Some(Value { base: k.layout.poly_of(&b), radical: k.layout.poly_of(&r) }))
}

/// Packed states of `n` closed strands with every digit below `dim`.
fn columns(dim: usize, bits: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0usize];
    for j in 0..n {
        out = out.iter().flat_map(|&x| (0..dim).map(move |d| x | (d << (bits * j)))).collect();
    }
    out.sort();
    out
}
