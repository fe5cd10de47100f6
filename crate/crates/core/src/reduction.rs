//! Encoding tripartite matching instances as RNA sequences.
//!
//! Given node sets X, Y, Z of size `n` and an edge list E of `m` triples,
//! the encoder emits a sequence `S_E` and a target `h` such that a planar
//! structure with `h` stacking pairs exists exactly when E contains a
//! perfect matching. Every edge becomes a *region*; regions are emitted in
//! reverse edge order after a terminal region. Two gadget families make up
//! a region:
//!
//! - node gadgets `U^d A^k G U^d A^{d-k}` and their complementary partners
//!   `U^{d-k} A^d G U^k A^d` (parameter `k` identifies a node; X uses
//!   `k = 1..=n`, Y `n+1..=2n`, Z `2n+1..=3n`);
//! - delimiter gadgets `C^{2d+2k} A G C^{4d-2k}` and partners
//!   `G^{4d-2k} A G^{2d+2k}` (one `V`/`W` pair per region).
//!
//! Each gadget splits into two *fragments* (maximal `U+A+`, `C+`, or `G+`
//! blocks). A fragment ladder-pairs perfectly only with its conjugate, which
//! exists only in the partner gadget, and the separators are chosen so the
//! whole sequence uses just ten of the sixteen two-letter patterns. Note the
//! partner gadget is not the literal conjugate of the gadget (the separator
//! between fragments stays `G` resp. `A` on both sides); conjugacy holds
//! fragment-wise and crosswise: fragment 1 of a gadget is the conjugate of
//! fragment 2 of its partner and vice versa.
//!
//! Against a perfect matching, [`build_witness`] assembles the explicit
//! structure realizing exactly `h` stacking pairs: unmatched regions close
//! over themselves (full-count delimiter + node pairings plus three
//! self-folds), matched regions chain their `W` delimiters to the next
//! matched region and re-route already-matched node gadgets across regions,
//! and the terminal region anchors the chain. Delimiter arithmetic: an
//! equal-index pairing yields `6d-2` stacking pairs in two ladders, a
//! mismatched pairing `6d-3` in three, a node pairing `3d-2` in two, and a
//! self-fold `d-1` in one.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seq::{census, Base, Census, RnaSequence};
use crate::structure::{runs_to_structure, SecondaryStructure, StackRun};

/// A tripartite matching instance: node sets of size `n`, edges as 1-based
/// triples (x, y, z). Duplicate edges are rejected; they add no matching
/// power and would leave dangling delimiter indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripartiteInstance {
    n: usize,
    edges: Vec<(usize, usize, usize)>,
}

impl TripartiteInstance {
    pub fn new(n: usize, edges: Vec<(usize, usize, usize)>) -> Result<Self> {
        if n == 0 || edges.is_empty() {
            return Err(Error::EmptyInstance { n, m: edges.len() });
        }
        for (idx, &(x, y, z)) in edges.iter().enumerate() {
            for value in [x, y, z] {
                if value == 0 || value > n {
                    return Err(Error::NodeOutOfRange {
                        edge: idx + 1,
                        value,
                        n,
                    });
                }
            }
            if edges[..idx].contains(&edges[idx]) {
                return Err(Error::DuplicateEdge { index: idx + 1 });
            }
        }
        Ok(TripartiteInstance { n, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }
}

/// The derived encoding parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetParams {
    /// Padding parameter: `max(6n, 4(m+1)) + 1`.
    pub d: usize,
    /// Stacking pairs closed inside one unmatched region:
    /// `3n(3d-2) + 6d - 1`.
    pub sigma: usize,
    /// Decision target: `m*sigma + n(6d-4) + 12d - 5`.
    pub h: usize,
}

impl GadgetParams {
    pub fn derive(n: usize, m: usize) -> GadgetParams {
        let d = (6 * n).max(4 * (m + 1)) + 1;
        let sigma = 3 * n * (3 * d - 2) + 6 * d - 1;
        let h = m * sigma + n * (6 * d - 4) + 12 * d - 5;
        GadgetParams { d, sigma, h }
    }
}

fn repeat(base: Base, count: usize, out: &mut Vec<Base>) {
    out.extend(std::iter::repeat_n(base, count));
}

fn check_gadget_param(k: usize, d: usize) -> Result<()> {
    if k == 0 || k >= d {
        return Err(Error::Format(format!(
            "gadget parameter k={k} outside 1..{d}"
        )));
    }
    Ok(())
}

/// Node gadget `U^d A^k G U^d A^{d-k}` (length `3d + 1`).
pub fn node_gadget(k: usize, d: usize) -> Result<Vec<Base>> {
    check_gadget_param(k, d)?;
    let mut out = Vec::with_capacity(3 * d + 1);
    repeat(Base::U, d, &mut out);
    repeat(Base::A, k, &mut out);
    out.push(Base::G);
    repeat(Base::U, d, &mut out);
    repeat(Base::A, d - k, &mut out);
    Ok(out)
}

/// Partner node gadget `U^{d-k} A^d G U^k A^d` (length `3d + 1`).
pub fn node_gadget_comp(k: usize, d: usize) -> Result<Vec<Base>> {
    check_gadget_param(k, d)?;
    let mut out = Vec::with_capacity(3 * d + 1);
    repeat(Base::U, d - k, &mut out);
    repeat(Base::A, d, &mut out);
    out.push(Base::G);
    repeat(Base::U, k, &mut out);
    repeat(Base::A, d, &mut out);
    Ok(out)
}

/// Delimiter gadget `C^{2d+2k} A G C^{4d-2k}` (length `6d + 2`).
pub fn delim_gadget(k: usize, d: usize) -> Result<Vec<Base>> {
    check_gadget_param(k, d)?;
    let mut out = Vec::with_capacity(6 * d + 2);
    repeat(Base::C, 2 * d + 2 * k, &mut out);
    out.push(Base::A);
    out.push(Base::G);
    repeat(Base::C, 4 * d - 2 * k, &mut out);
    Ok(out)
}

/// Partner delimiter gadget `G^{4d-2k} A G^{2d+2k}` (length `6d + 1`).
pub fn delim_gadget_comp(k: usize, d: usize) -> Result<Vec<Base>> {
    check_gadget_param(k, d)?;
    let mut out = Vec::with_capacity(6 * d + 1);
    repeat(Base::G, 4 * d - 2 * k, &mut out);
    out.push(Base::A);
    repeat(Base::G, 2 * d + 2 * k, &mut out);
    Ok(out)
}

/// The four gadget shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GadgetKind {
    Node,
    NodeComp,
    Delim,
    DelimComp,
}

/// Where one gadget instance sits in the emitted sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetAnchor {
    pub kind: GadgetKind,
    /// The gadget parameter: node index (1..=3n) or delimiter index
    /// (1..=2m+2).
    pub k: usize,
    /// 1-based global position of the first base.
    pub start: usize,
}

impl GadgetAnchor {
    pub fn len(&self, d: usize) -> usize {
        match self.kind {
            GadgetKind::Node | GadgetKind::NodeComp => 3 * d + 1,
            GadgetKind::Delim => 6 * d + 2,
            GadgetKind::DelimComp => 6 * d + 1,
        }
    }

    pub fn end(&self, d: usize) -> usize {
        self.start + self.len(d) - 1
    }

    /// Span of the first fragment (inclusive, 1-based).
    pub fn frag1(&self, d: usize) -> (usize, usize) {
        let len = match self.kind {
            GadgetKind::Node => d + self.k,
            GadgetKind::NodeComp => 2 * d - self.k,
            GadgetKind::Delim => 2 * d + 2 * self.k,
            GadgetKind::DelimComp => 4 * d - 2 * self.k,
        };
        (self.start, self.start + len - 1)
    }

    /// Span of the second fragment (inclusive, 1-based).
    pub fn frag2(&self, d: usize) -> (usize, usize) {
        let (sep, len) = match self.kind {
            GadgetKind::Node => (1, 2 * d - self.k),
            GadgetKind::NodeComp => (1, d + self.k),
            GadgetKind::Delim => (2, 4 * d - 2 * self.k),
            GadgetKind::DelimComp => (1, 2 * d + 2 * self.k),
        };
        let start = self.frag1(d).1 + sep + 1;
        (start, start + len - 1)
    }
}

/// Anchors for one emitted region.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    /// Region index: `1..=m` for edges, `m+1` for the terminal region.
    pub j: usize,
    pub start: usize,
    pub end: usize,
    pub v: GadgetAnchor,
    pub w: GadgetAnchor,
    pub v_comp: GadgetAnchor,
    pub w_comp: GadgetAnchor,
    /// Node gadgets present, ascending by `k` (empty in the terminal region).
    pub nodes: Vec<GadgetAnchor>,
    /// Partner node gadgets present (edge regions omit the three nodes of
    /// their own edge).
    pub node_comps: Vec<GadgetAnchor>,
}

impl Region {
    pub fn node(&self, k: usize) -> Option<&GadgetAnchor> {
        self.nodes.iter().find(|a| a.k == k)
    }

    pub fn node_comp(&self, k: usize) -> Option<&GadgetAnchor> {
        self.node_comps.iter().find(|a| a.k == k)
    }
}

/// The full encoding: sequence, parameters, and anchors for every gadget.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionLayout {
    pub sequence: RnaSequence,
    pub n: usize,
    pub m: usize,
    pub edges: Vec<(usize, usize, usize)>,
    pub params: GadgetParams,
    /// Regions in emission order: `m+1, m, ..., 1`.
    pub regions: Vec<Region>,
}

impl ReductionLayout {
    pub fn region(&self, j: usize) -> &Region {
        self.regions
            .iter()
            .find(|r| r.j == j)
            .expect("region index within 1..=m+1")
    }

    /// Closed-form sequence length; cubic in `n + m`.
    pub fn expected_len(&self) -> usize {
        let (n, m, d) = (self.n, self.m, self.params.d);
        m * (18 * n * d + 15 * d + 12 * n + 6) + 9 * n * d + 24 * d + 6 * n + 12
    }
}

struct Emitter {
    buf: Vec<Base>,
    d: usize,
}

impl Emitter {
    fn pos(&self) -> usize {
        self.buf.len() + 1
    }

    fn push(&mut self, b: Base) {
        self.buf.push(b);
    }

    fn gadget(&mut self, kind: GadgetKind, k: usize) -> GadgetAnchor {
        let anchor = GadgetAnchor {
            kind,
            k,
            start: self.pos(),
        };
        let bases = match kind {
            GadgetKind::Node => node_gadget(k, self.d),
            GadgetKind::NodeComp => node_gadget_comp(k, self.d),
            GadgetKind::Delim => delim_gadget(k, self.d),
            GadgetKind::DelimComp => delim_gadget_comp(k, self.d),
        }
        .expect("gadget parameters stay in range by construction");
        self.buf.extend(bases);
        anchor
    }
}

/// Emit the sequence and anchors for `inst`.
pub fn encode_instance(inst: &TripartiteInstance) -> ReductionLayout {
    let (n, m) = (inst.n(), inst.m());
    let params = GadgetParams::derive(n, m);
    let d = params.d;
    let mut e = Emitter { buf: Vec::new(), d };
    let mut regions = Vec::with_capacity(m + 1);

    // Terminal region first, then edge regions in reverse order.
    regions.push(emit_region(&mut e, n, m, m + 1, None));
    for j in (1..=m).rev() {
        regions.push(emit_region(&mut e, n, m, j, Some(inst.edges()[j - 1])));
    }

    ReductionLayout {
        sequence: RnaSequence::new(e.buf),
        n,
        m,
        edges: inst.edges().to_vec(),
        params,
        regions,
    }
}

fn emit_region(
    e: &mut Emitter,
    n: usize,
    m: usize,
    j: usize,
    edge: Option<(usize, usize, usize)>,
) -> Region {
    let start = e.pos();
    e.push(Base::A);
    e.push(Base::G);
    let v = e.gadget(GadgetKind::Delim, j);
    e.push(Base::A);
    e.push(Base::G);
    let w = e.gadget(GadgetKind::Delim, m + 1 + j);
    e.push(Base::A);
    e.push(Base::G);

    // The gadget chain: node gadgets ascending (edge regions only), then
    // partner gadgets with each class reversed, skipping the region's own
    // edge. Components are joined by single `G` separators; empty
    // components vanish entirely so no `GG` ever appears.
    let mut nodes = Vec::new();
    let mut node_comps = Vec::new();
    let mut first = true;
    let sep = |e: &mut Emitter, first: &mut bool| {
        if *first {
            *first = false;
        } else {
            e.push(Base::G);
        }
    };
    if edge.is_some() {
        for k in 1..=3 * n {
            sep(e, &mut first);
            nodes.push(e.gadget(GadgetKind::Node, k));
        }
    }
    let excluded = edge.map(|(x, y, z)| [x, n + y, 2 * n + z]);
    for class in (0..3).rev() {
        for i in (1..=n).rev() {
            let k = class * n + i;
            if excluded.is_some_and(|ex| ex.contains(&k)) {
                continue;
            }
            sep(e, &mut first);
            node_comps.push(e.gadget(GadgetKind::NodeComp, k));
        }
    }

    let v_comp = e.gadget(GadgetKind::DelimComp, j);
    e.push(Base::A);
    let w_comp = e.gadget(GadgetKind::DelimComp, m + 1 + j);
    let end = e.pos() - 1;

    Region {
        j,
        start,
        end,
        v,
        w,
        v_comp,
        w_comp,
        nodes,
        node_comps,
    }
}

/// Analytic two-substring counts for the generated sequence. The six
/// pairable patterns follow the per-region gadget inventory; the four
/// separator-only patterns (AG, GA, GU, CA) are derived from the emission
/// layout; the remaining six (AC, AU, CG, CU, UC, UG) never occur.
pub fn expected_census(inst: &TripartiteInstance) -> Census {
    let (n, m) = (inst.n(), inst.m());
    let d = GadgetParams::derive(n, m).d;
    let mut c = Census::zero();
    let (n64, m64, d64) = (n as u64, m as u64, d as u64);

    c.set(
        Base::A,
        Base::A,
        m64 * (3 * n64 * (d64 - 2) + (3 * n64 - 3) * (2 * d64 - 2)) + 3 * n64 * (2 * d64 - 2),
    );
    c.set(
        Base::U,
        Base::U,
        m64 * (3 * n64 * (2 * d64 - 2) + (3 * n64 - 3) * (d64 - 2)) + 3 * n64 * (d64 - 2),
    );
    c.set(Base::U, Base::A, 2 * m64 * (6 * n64 - 3) + 6 * n64);
    c.set(Base::G, Base::G, 2 * (m64 + 1) * (6 * d64 - 2));
    c.set(Base::C, Base::C, 2 * (m64 + 1) * (6 * d64 - 2));
    c.set(Base::G, Base::C, 4 * m64 + 4);
    c.set(Base::A, Base::G, m64 * (12 * n64 + 2) + 6 * n64 + 8);
    c.set(Base::G, Base::U, m64 * (12 * n64 - 6) + 6 * n64);
    c.set(Base::C, Base::A, 4 * m64 + 4);
    c.set(Base::G, Base::A, 4 * m64 + 3);
    c
}

/// The capacity bound `min(#AA, #UU) + min(#GG, #CC) + #UA/2 + #GC/2`,
/// evaluated on the analytic census. For `m >= n` it equals
/// `h + n + 1 + 2m + 2` exactly.
pub fn capacity_bound(inst: &TripartiteInstance) -> usize {
    let c = expected_census(inst);
    let bound = c.get(Base::A, Base::A).min(c.get(Base::U, Base::U))
        + c.get(Base::G, Base::G).min(c.get(Base::C, Base::C))
        + c.get(Base::U, Base::A) / 2
        + c.get(Base::G, Base::C) / 2;
    bound as usize
}

/// True iff `selected` (1-based edge indices) is a perfect matching: `n`
/// distinct edges covering every node of each class exactly once.
pub fn verify_matching(inst: &TripartiteInstance, selected: &[usize]) -> bool {
    let n = inst.n();
    if selected.len() != n {
        return false;
    }
    let mut seen_edge = vec![false; inst.m() + 1];
    let mut seen = [vec![false; n + 1], vec![false; n + 1], vec![false; n + 1]];
    for &idx in selected {
        if idx == 0 || idx > inst.m() || seen_edge[idx] {
            return false;
        }
        seen_edge[idx] = true;
        let (x, y, z) = inst.edges()[idx - 1];
        for (class, value) in [(0, x), (1, y), (2, z)] {
            if seen[class][value] {
                return false;
            }
            seen[class][value] = true;
        }
    }
    true
}

fn run_between(left_start: usize, right_end: usize, npairs: usize) -> StackRun {
    StackRun {
        p: left_start,
        q: right_end,
        len: npairs - 1,
    }
}

/// Ladder runs pairing two delimiter gadgets, left before right in the
/// sequence. Equal indices give two nested ladders totalling `6d - 2`
/// stacking pairs; unequal indices give three nested ladders totalling
/// `6d - 3` (the surplus block splits across both partner fragments).
pub fn delim_pairing_runs(d: usize, left: &GadgetAnchor, right: &GadgetAnchor) -> Vec<StackRun> {
    match (left.kind, right.kind) {
        (GadgetKind::Delim, GadgetKind::DelimComp) if left.k == right.k => {
            let k = left.k;
            vec![
                run_between(left.frag1(d).0, right.frag2(d).1, 2 * d + 2 * k),
                run_between(left.frag2(d).0, right.frag1(d).1, 4 * d - 2 * k),
            ]
        }
        (GadgetKind::DelimComp, GadgetKind::Delim) => {
            let (a, b) = (left.k, right.k);
            assert!(a > b, "chain pairings always run from a larger index");
            let e = 2 * (a - b);
            vec![
                run_between(left.frag1(d).0, right.frag2(d).1, 4 * d - 2 * a),
                run_between(left.frag2(d).0, right.frag2(d).0 + e - 1, e),
                run_between(left.frag2(d).0 + e, right.frag1(d).1, 2 * d + 2 * b),
            ]
        }
        (GadgetKind::Delim, GadgetKind::DelimComp) => {
            let (a, b) = (left.k, right.k);
            assert!(a > b, "anchor pairing always runs from a larger index");
            let e = 2 * (a - b);
            vec![
                run_between(left.frag1(d).0, right.frag2(d).1, 2 * d + 2 * b),
                run_between(left.frag1(d).0 + 2 * d + 2 * b, right.frag1(d).1, e),
                run_between(
                    left.frag2(d).0,
                    right.frag1(d).0 + (4 * d - 2 * a) - 1,
                    4 * d - 2 * a,
                ),
            ]
        }
        _ => panic!("not a delimiter pairing: {left:?} vs {right:?}"),
    }
}

/// Ladder runs pairing a node gadget with its partner (either order),
/// totalling `3d - 2` stacking pairs in two nested ladders.
pub fn node_pairing_runs(d: usize, left: &GadgetAnchor, right: &GadgetAnchor) -> Vec<StackRun> {
    assert_eq!(left.k, right.k, "node pairings are index-exact");
    let k = left.k;
    match (left.kind, right.kind) {
        (GadgetKind::Node, GadgetKind::NodeComp) => vec![
            run_between(left.frag1(d).0, right.frag2(d).1, d + k),
            run_between(left.frag2(d).0, right.frag1(d).1, 2 * d - k),
        ],
        (GadgetKind::NodeComp, GadgetKind::Node) => vec![
            run_between(left.frag1(d).0, right.frag2(d).1, 2 * d - k),
            run_between(left.frag2(d).0, right.frag1(d).1, d + k),
        ],
        _ => panic!("not a node pairing: {left:?} vs {right:?}"),
    }
}

/// The single ladder a lone node gadget folds into, `d - 1` stacking pairs.
/// The ladder window straddles the inner separator, pairing `d` bases of
/// mixed U/A content with their conjugate window.
pub fn self_fold_run(d: usize, anchor: &GadgetAnchor) -> StackRun {
    match anchor.kind {
        GadgetKind::Node => run_between(anchor.start + anchor.k, anchor.start + 3 * d, d),
        GadgetKind::NodeComp => run_between(anchor.start, anchor.start + 3 * d - anchor.k, d),
        _ => panic!("delimiter gadgets do not self-fold in the witness"),
    }
}

/// The run list of the target-achieving structure for a perfect matching.
pub fn witness_runs(layout: &ReductionLayout, matching: &[usize]) -> Result<Vec<StackRun>> {
    let inst = TripartiteInstance::new(layout.n, layout.edges.clone())?;
    if !verify_matching(&inst, matching) {
        return Err(Error::InvalidMatching(format!(
            "{matching:?} is not a perfect matching of the instance"
        )));
    }
    let (n, m, d) = (layout.n, layout.m, layout.params.d);
    let mut js: Vec<usize> = matching.to_vec();
    js.sort_unstable();

    let mut runs = Vec::new();

    // Unmatched regions close over themselves.
    for j in 1..=m {
        if js.binary_search(&j).is_ok() {
            continue;
        }
        let region = layout.region(j);
        runs.extend(delim_pairing_runs(d, &region.v, &region.v_comp));
        runs.extend(delim_pairing_runs(d, &region.w, &region.w_comp));
        let (x, y, z) = layout.edges[j - 1];
        let excluded = [x, n + y, 2 * n + z];
        for k in 1..=3 * n {
            if excluded.contains(&k) {
                runs.push(self_fold_run(d, region.node(k).expect("node present")));
            } else {
                runs.extend(node_pairing_runs(
                    d,
                    region.node(k).expect("node present"),
                    region.node_comp(k).expect("partner present"),
                ));
            }
        }
    }

    // Matched regions chain into the next matched region (the terminal
    // region closes the chain). Node gadgets of already-matched nodes pair
    // across regions; the rest pair locally.
    let mut matched: [Vec<bool>; 3] = [vec![false; n + 1], vec![false; n + 1], vec![false; n + 1]];
    for stage in 0..n {
        let jk = js[stage];
        let jnext = js.get(stage + 1).copied().unwrap_or(m + 1);
        let region = layout.region(jk);
        let next_region = layout.region(jnext);
        let (x, y, z) = layout.edges[jk - 1];
        matched[0][x] = true;
        matched[1][y] = true;
        matched[2][z] = true;

        runs.extend(delim_pairing_runs(d, &region.v, &region.v_comp));
        runs.extend(delim_pairing_runs(d, &next_region.w_comp, &region.w));

        for (class, class_matched) in matched.iter().enumerate() {
            for (i, &already_matched) in class_matched.iter().enumerate().skip(1) {
                let k = class * n + i;
                if already_matched {
                    runs.extend(node_pairing_runs(
                        d,
                        next_region.node_comp(k).expect("partner present ahead"),
                        region.node(k).expect("node present"),
                    ));
                } else {
                    runs.extend(node_pairing_runs(
                        d,
                        region.node(k).expect("node present"),
                        region.node_comp(k).expect("partner present"),
                    ));
                }
            }
        }
    }

    // Terminal region: local V pairing plus the long arc back to the first
    // matched region's W partner.
    let terminal = layout.region(m + 1);
    let first = layout.region(js[0]);
    runs.extend(delim_pairing_runs(d, &terminal.v, &terminal.v_comp));
    runs.extend(delim_pairing_runs(d, &terminal.w, &first.w_comp));

    Ok(runs)
}

/// Build and validate the witness structure for a perfect matching. Its
/// stacking-pair count is exactly `h`.
pub fn build_witness(layout: &ReductionLayout, matching: &[usize]) -> Result<SecondaryStructure> {
    let runs = witness_runs(layout, matching)?;
    runs_to_structure(&layout.sequence, &runs)
}

/// Parse the instance text format: a `n <int>` line, a `m <int>` line, then
/// exactly `m` lines `x y z`. `#` comments and blank lines are ignored.
pub fn parse_instance(text: &str) -> Result<TripartiteInstance> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let mut header = |name: &str| -> Result<usize> {
        let line = lines
            .next()
            .ok_or_else(|| Error::Format(format!("missing '{name} <count>' line")))?;
        let mut parts = line.split_whitespace();
        match (parts.next(), parts.next(), parts.next()) {
            (Some(key), Some(value), None) if key == name => value
                .parse()
                .map_err(|_| Error::Format(format!("bad count in '{line}'"))),
            _ => Err(Error::Format(format!(
                "expected '{name} <count>', got '{line}'"
            ))),
        }
    };
    let n = header("n")?;
    let m = header("m")?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let line = lines
            .next()
            .ok_or_else(|| Error::Format(format!("expected {m} edge lines")))?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Format(format!("expected 'x y z', got '{line}'")));
        }
        let mut triple = [0usize; 3];
        for (slot, field) in triple.iter_mut().zip(&fields) {
            *slot = field
                .parse()
                .map_err(|_| Error::Format(format!("bad integer in '{line}'")))?;
        }
        edges.push((triple[0], triple[1], triple[2]));
    }
    if lines.next().is_some() {
        return Err(Error::Format("trailing content after edge list".into()));
    }
    TripartiteInstance::new(n, edges)
}

/// Emit the instance text format.
pub fn format_instance(inst: &TripartiteInstance) -> String {
    let mut out = format!("n {}\nm {}\n", inst.n(), inst.m());
    for &(x, y, z) in inst.edges() {
        out.push_str(&format!("{x} {y} {z}\n"));
    }
    out
}

/// Sanity check used by tests and the encoder CLI: the generated sequence's
/// real census must equal the analytic one on all sixteen patterns.
pub fn census_matches(layout: &ReductionLayout, inst: &TripartiteInstance) -> bool {
    census(&layout.sequence) == expected_census(inst)
}
