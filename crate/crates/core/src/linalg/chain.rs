//! Graded image chains and ranks.
//!
//! Along a line of classes `V_0 -> V_1 -> ...` (each arrow multiplication by
//! `f`) a basis of every `V_j` is kept together with birth labels: a vector
//! labelled `b` lies in the image of `V_b`, and the vectors labelled `<= b`
//! span exactly that image. Images of a basis of `V_j` are inserted into the
//! echelon form of `V_{j+1}` in label order, then non-pivot unit vectors
//! complete the basis with label `j + 1`. So one sweep along a line yields
//! `dim f^t V_b` for every start class `b` and every `t`.

use super::bits::BitEchelon;
use super::dense::{DenseEchelon, Echelon, RowMeta};
use super::grading::{ClassLayout, ClassSpan, Grading};
use crate::error::Result;
use crate::ring::TruncatedPoly;

/// `(local target position, coefficient)` lists for every source position.
struct Transfer {
    offsets: Vec<usize>,
    entries: Vec<(u32, u32)>,
}

impl Transfer {
    fn build(
        poly: &PolyTerms,
        layout: &ClassLayout,
        source: &ClassSpan,
        target: Option<&ClassSpan>,
    ) -> Transfer {
        let mut offsets = Vec::with_capacity(source.len + 1);
        let mut entries = Vec::new();
        let mut digits = vec![0u32; poly.nvars];
        offsets.push(0);
        for &idx in layout.members(source) {
            if let Some(target) = target {
                poly.ring.decode_into(idx as u64, &mut digits);
                for (shift, exps, c) in &poly.terms {
                    if digits
                        .iter()
                        .zip(exps)
                        .all(|(&d, &a)| d as u64 + (a as u64) < poly.side)
                    {
                        let tgt = idx as u64 + shift;
                        debug_assert!({
                            let members = layout.members(target);
                            members.binary_search(&(tgt as u32)).is_ok()
                        });
                        entries.push((layout.local_of[tgt as usize], *c));
                    }
                }
            }
            offsets.push(entries.len());
        }
        Transfer { offsets, entries }
    }

    #[inline]
    fn of(&self, pos: usize) -> &[(u32, u32)] {
        &self.entries[self.offsets[pos]..self.offsets[pos + 1]]
    }
}

struct PolyTerms {
    ring: crate::ring::TruncatedRing,
    nvars: usize,
    side: u64,
    terms: Vec<(u64, Vec<u32>, u32)>,
}

impl PolyTerms {
    fn new(g: &TruncatedPoly) -> PolyTerms {
        let ring = *g.ring();
        PolyTerms {
            ring,
            nvars: ring.nvars(),
            side: ring.side(),
            terms: g
                .terms()
                .iter()
                .map(|&(i, c)| (i, ring.decode(i), c))
                .collect(),
        }
    }

    fn exponents(&self) -> Vec<Vec<u32>> {
        self.terms.iter().map(|t| t.1.clone()).collect()
    }
}

/// Adds the image of `row` of `cur` to the pending vector of `next`.
fn push_image<E: Echelon>(next: &mut E, transfer: &Transfer, cur: &E, row: &RowMeta) {
    cur.for_each_entry(row, |k, v| {
        for &(tgt, c) in transfer.of(k) {
            next.add(tgt as usize, v * c as u64);
        }
    });
}

fn push_unit<E: Echelon>(next: &mut E, transfer: &Transfer, pos: usize) {
    for &(tgt, c) in transfer.of(pos) {
        next.add(tgt as usize, c as u64);
    }
}

/// Maps the current basis (rows of `cur` in label order, then non-pivot unit
/// vectors labelled `unit_label`) into `next`.
fn map_basis<E: Echelon>(
    cur: &E,
    cur_width: usize,
    next: &mut E,
    transfer: &Transfer,
    unit_label: u32,
) {
    for row in cur.rows() {
        push_image(next, transfer, cur, row);
        next.commit(row.label);
    }
    for pos in 0..cur_width {
        if !cur.has_pivot(pos) {
            push_unit(next, transfer, pos);
            next.commit(unit_label);
        }
    }
}

/// `dim f^t R_e` for `t = 0, 1, ...` up to and including the first zero.
pub(crate) fn graded_chain(f: &TruncatedPoly) -> Result<Vec<u64>> {
    let ring = *f.ring();
    let n = ring.size();
    if f.is_zero() {
        return Ok(vec![n, 0]);
    }
    let poly = PolyTerms::new(f);
    let grading = Grading::for_exponents(ring.nvars(), &poly.exponents());
    let layout = ClassLayout::build(&ring, &grading)?;
    let p = ring.modulus();
    if p.get() == 2 {
        Ok(chain_in(
            &layout,
            &poly,
            BitEchelon::new(),
            BitEchelon::new(),
        ))
    } else {
        Ok(chain_in(
            &layout,
            &poly,
            DenseEchelon::new(p),
            DenseEchelon::new(p),
        ))
    }
}

fn chain_in<E: Echelon>(
    layout: &ClassLayout,
    poly: &PolyTerms,
    mut cur: E,
    mut next: E,
) -> Vec<u64> {
    let mut diff: Vec<i64> = vec![0; 2];
    let mut direct: Vec<u64> = Vec::new();

    if layout.shifting {
        let classes = &layout.classes;
        let mut i = 0;
        while i < classes.len() {
            let mut j = i + 1;
            while j < classes.len()
                && classes[j].line == classes[i].line
                && classes[j].pos == classes[j - 1].pos + 1
            {
                j += 1;
            }
            sweep_line(&classes[i..j], layout, poly, &mut cur, &mut next, &mut diff);
            i = j;
        }
    } else {
        for class in &layout.classes {
            self_chain(class, layout, poly, &mut cur, &mut next, &mut direct);
        }
    }

    let mut dims = Vec::new();
    let mut run: i64 = 0;
    for (t, d) in diff.iter().enumerate() {
        run += d;
        let extra = direct.get(t).copied().unwrap_or(0);
        dims.push(run as u64 + extra);
    }
    dims.extend(direct.iter().skip(diff.len()));
    while dims.len() > 1 && dims[dims.len() - 1] == 0 && dims[dims.len() - 2] == 0 {
        dims.pop();
    }
    if dims.last() != Some(&0) {
        dims.push(0);
    }
    dims
}

fn sweep_line<E: Echelon>(
    line: &[ClassSpan],
    layout: &ClassLayout,
    poly: &PolyTerms,
    cur: &mut E,
    next: &mut E,
    diff: &mut Vec<i64>,
) {
    // a vector born at b and alive in V_j counts towards dim f^t V_{b'}
    // for all b <= b' <= j, i.e. t in 0..=j-b
    let bar = |diff: &mut Vec<i64>, born: u32, j: usize, count: i64| {
        let reach = j - born as usize + 1;
        if diff.len() <= reach {
            diff.resize(reach + 1, 0);
        }
        diff[0] += count;
        diff[reach] -= count;
    };
    cur.reset(line[0].len);
    bar(diff, 0, 0, line[0].len as i64);
    for j in 0..line.len() - 1 {
        let transfer = Transfer::build(poly, layout, &line[j], Some(&line[j + 1]));
        next.reset(line[j + 1].len);
        map_basis(cur, line[j].len, next, &transfer, j as u32);
        std::mem::swap(cur, next);
        let width = line[j + 1].len;
        for row in cur.rows() {
            bar(diff, row.label, j + 1, 1);
        }
        bar(diff, (j + 1) as u32, j + 1, (width - cur.rank()) as i64);
    }
}

fn self_chain<E: Echelon>(
    class: &ClassSpan,
    layout: &ClassLayout,
    poly: &PolyTerms,
    cur: &mut E,
    next: &mut E,
    direct: &mut Vec<u64>,
) {
    let transfer = Transfer::build(poly, layout, class, Some(class));
    let add = |direct: &mut Vec<u64>, t: usize, d: u64| {
        if direct.len() <= t {
            direct.resize(t + 1, 0);
        }
        direct[t] += d;
    };
    add(direct, 0, class.len as u64);
    cur.reset(class.len);
    // t = 1 starts from the unit vectors of the whole class
    next.reset(class.len);
    for pos in 0..class.len {
        push_unit(next, &transfer, pos);
        next.commit(0);
    }
    std::mem::swap(cur, next);
    let mut t = 1;
    loop {
        add(direct, t, cur.rank() as u64);
        if cur.rank() == 0 {
            break;
        }
        next.reset(class.len);
        for row in cur.rows() {
            push_image(next, &transfer, cur, row);
            next.commit(0);
        }
        std::mem::swap(cur, next);
        t += 1;
    }
}

/// `dim g R_e`, summed over the classes of a grading that makes `g`
/// homogeneous.
pub(crate) fn graded_rank(g: &TruncatedPoly) -> Result<u64> {
    let ring = *g.ring();
    if g.is_zero() {
        return Ok(0);
    }
    let poly = PolyTerms::new(g);
    let grading = Grading::for_exponents(ring.nvars(), &poly.exponents());
    let layout = ClassLayout::build(&ring, &grading)?;
    if ring.modulus().get() == 2 {
        Ok(rank_in(&layout, &poly, BitEchelon::new()))
    } else {
        Ok(rank_in(&layout, &poly, DenseEchelon::new(ring.modulus())))
    }
}

fn rank_in<E: Echelon>(layout: &ClassLayout, poly: &PolyTerms, mut ech: E) -> u64 {
    let classes = &layout.classes;
    let mut total = 0u64;
    for (k, class) in classes.iter().enumerate() {
        let target = if layout.shifting {
            classes
                .get(k + 1)
                .filter(|c| c.line == class.line && c.pos == class.pos + 1)
        } else {
            Some(class)
        };
        let Some(target) = target else { continue };
        let transfer = Transfer::build(poly, layout, class, Some(target));
        ech.reset(target.len);
        for pos in 0..class.len {
            push_unit(&mut ech, &transfer, pos);
            ech.commit(0);
        }
        total += ech.rank() as u64;
    }
    total
}
