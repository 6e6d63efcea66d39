//! The triangulation cut out of a surface by the unit circle through the
//! three branch values, encoded combinatorially.
//!
//! For a degree-d triple the circle splits into three arcs
//! (1 → ω₃ → ω₃² → 1); each arc has d preimage edges, indexed by sheet.
//! Vertices are the permutation cycles over the three branch values,
//! colored by value; faces are the d sheet-disks over the inner disk and d
//! over the outer disk, so V − E + F = 2 − 2g exactly.
//!
//! Darts are edge ends: dart 2e is the end of edge e at its color-m vertex
//! (arc m runs m → m+1), dart 2e + 1 the end at color m+1. The rotation
//! permutation lists darts counterclockwise around each vertex, derived
//! from the sheet structure over the cut plane.

use crate::belyi::MonodromyTriple;
use crate::{Error, Result};
use serde::Serialize;

const ARCS: usize = 3;

#[derive(Debug, Clone, Serialize)]
pub struct DessinVertex {
    /// 0, 1, 2 for the branch values 1, ω₃, ω₃².
    pub color: usize,
    /// The permutation cycle of sheets at this vertex.
    pub sheets: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FaceKind {
    Inner,
    Outer,
}

#[derive(Debug, Clone, Serialize)]
pub struct DessinFace {
    pub kind: FaceKind,
    pub darts: Vec<usize>,
}

/// Combinatorial map of the triangulation.
#[derive(Debug, Clone)]
pub struct Dessin {
    triple: MonodromyTriple,
    vertices: Vec<DessinVertex>,
    /// vertex id of each dart
    vertex_of: Vec<usize>,
    /// counterclockwise rotation: next dart at the same vertex
    rotation: Vec<usize>,
    faces: Vec<DessinFace>,
}

/// Mod-2 vector over the edge (or vertex) set.
type Bits = Vec<u64>;

fn bits_new(n: usize) -> Bits {
    vec![0u64; n.div_ceil(64).max(1)]
}

fn bits_set(b: &mut Bits, i: usize) {
    b[i / 64] ^= 1 << (i % 64);
}

fn bits_get(b: &Bits, i: usize) -> bool {
    (b[i / 64] >> (i % 64)) & 1 == 1
}

fn bits_xor(a: &mut Bits, b: &Bits) {
    for (x, y) in a.iter_mut().zip(b) {
        *x ^= y;
    }
}

fn bits_is_zero(b: &Bits) -> bool {
    b.iter().all(|&x| x == 0)
}

fn bits_and_parity(a: &Bits, b: &Bits) -> bool {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum::<u32>() % 2 == 1
}

fn leading_bit(v: &Bits) -> Option<usize> {
    for (w, &word) in v.iter().enumerate() {
        if word != 0 {
            return Some(w * 64 + word.trailing_zeros() as usize);
        }
    }
    None
}

fn reduce_against(v: &mut Bits, basis: &[Bits]) {
    for b in basis {
        if let Some(pivot) = leading_bit(b) {
            if bits_get(v, pivot) {
                bits_xor(v, b);
            }
        }
    }
}

fn boolean_rank(mut rows: Vec<Vec<bool>>) -> usize {
    let mut rank = 0;
    let width = rows.first().map_or(0, |r| r.len());
    for col in 0..width {
        if let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col]) {
            rows.swap(rank, pivot);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[col] {
                    for c in 0..width {
                        row[c] ^= pivot_row[c];
                    }
                }
            }
            rank += 1;
        }
    }
    rank
}

impl Dessin {
    /// Builds the triangulation of a valid monodromy triple.
    pub fn build(triple: &MonodromyTriple) -> Dessin {
        let d = triple.degree();
        let n_darts = 6 * d;

        let mut vertices = Vec::new();
        let mut vertex_of_sheet = vec![[usize::MAX; ARCS]; d];
        for color in 0..ARCS {
            for cycle in triple.perm(color).cycles() {
                let id = vertices.len();
                for &s in &cycle {
                    vertex_of_sheet[s][color] = id;
                }
                vertices.push(DessinVertex { color, sheets: cycle });
            }
        }

        // edge e = arc·d + sheet; darts 2e (at color arc), 2e+1 (at arc+1)
        let dart = |arc: usize, sheet: usize, end: usize| 2 * (arc * d + sheet) + end;
        let mut vertex_of = vec![usize::MAX; n_darts];
        for arc in 0..ARCS {
            for s in 0..d {
                vertex_of[dart(arc, s, 0)] = vertex_of_sheet[s][arc];
                vertex_of[dart(arc, s, 1)] = vertex_of_sheet[s][(arc + 1) % ARCS];
            }
        }

        // counterclockwise around a value-m vertex the outgoing arc-m end
        // and the incoming arc-(m−1) end alternate, the sheet advancing by
        // the vertex permutation once per turn
        let mut rotation = vec![usize::MAX; n_darts];
        for (color, (out_arc, in_arc)) in [(0usize, 2usize), (1, 0), (2, 1)].into_iter().enumerate()
        {
            let p = triple.perm(color);
            for s in 0..d {
                rotation[dart(out_arc, s, 0)] = dart(in_arc, s, 1);
                rotation[dart(in_arc, s, 1)] = dart(out_arc, p.apply(s), 0);
            }
        }

        // faces: orbits of σ⁻¹ ∘ α, α being the edge involution
        let mut inv_rotation = vec![usize::MAX; n_darts];
        for (i, &j) in rotation.iter().enumerate() {
            inv_rotation[j] = i;
        }
        let mut faces = Vec::new();
        let mut seen = vec![false; n_darts];
        for start in 0..n_darts {
            if seen[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut cur = start;
            loop {
                seen[cur] = true;
                orbit.push(cur);
                cur = inv_rotation[cur ^ 1];
                if cur == start {
                    break;
                }
            }
            // inner faces consist of outgoing (even) darts only
            let kind = if orbit.iter().all(|&dd| dd % 2 == 0) {
                FaceKind::Inner
            } else {
                FaceKind::Outer
            };
            faces.push(DessinFace { kind, darts: orbit });
        }

        let dessin = Dessin { triple: triple.clone(), vertices, vertex_of, rotation, faces };
        debug_assert_eq!(dessin.euler_characteristic(), 2 - 2 * triple.genus() as i64);
        dessin
    }

    pub fn triple(&self) -> &MonodromyTriple {
        &self.triple
    }

    pub fn degree(&self) -> usize {
        self.triple.degree()
    }

    pub fn genus(&self) -> usize {
        self.triple.genus()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        3 * self.degree()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    pub fn vertices(&self) -> &[DessinVertex] {
        &self.vertices
    }

    pub fn faces(&self) -> &[DessinFace] {
        &self.faces
    }

    pub fn rotation(&self) -> &[usize] {
        &self.rotation
    }

    pub fn dart_vertex(&self, dart: usize) -> usize {
        self.vertex_of[dart]
    }

    pub fn dart_edge(&self, dart: usize) -> usize {
        dart / 2
    }

    /// Arc label (0: 1→ω₃, 1: ω₃→ω₃², 2: ω₃²→1) of an edge.
    pub fn edge_arc(&self, edge: usize) -> usize {
        edge / self.degree()
    }

    /// Endpoint vertices (color m, color m+1) of an edge.
    pub fn edge_vertices(&self, edge: usize) -> (usize, usize) {
        (self.vertex_of[2 * edge], self.vertex_of[2 * edge + 1])
    }

    fn check_closed_walk(&self, darts: &[usize]) -> Result<()> {
        if darts.is_empty() {
            return Err(Error::NotACycle("empty dart sequence".into()));
        }
        for &dt in darts {
            if dt >= 6 * self.degree() {
                return Err(Error::NotACycle(format!("dart {dt} out of range")));
            }
        }
        for k in 0..darts.len() {
            let here = darts[k];
            let next = darts[(k + 1) % darts.len()];
            // the walk continues from the far end of the current edge
            if self.vertex_of[here ^ 1] != self.vertex_of[next] {
                return Err(Error::NotACycle(format!(
                    "dart {next} does not start where dart {here} lands"
                )));
            }
        }
        Ok(())
    }

    /// Covering test for a closed walk: succeeds iff the walk is a simple
    /// cycle whose vertex colors advance cyclically 1 → ω₃ → ω₃² → 1 (or
    /// consistently in reverse); the covering degree is length/3.
    pub fn loop_is_covering(&self, darts: &[usize]) -> std::result::Result<usize, String> {
        if let Err(e) = self.check_closed_walk(darts) {
            return Err(e.to_string());
        }
        if darts.len() % 3 != 0 {
            return Err(format!("length {} is not a multiple of 3", darts.len()));
        }
        let mut visited = std::collections::BTreeSet::new();
        for &dt in darts {
            if !visited.insert(self.vertex_of[dt]) {
                return Err("walk revisits a vertex".into());
            }
        }
        // forward darts are even (arc m leaving color m), backward darts odd
        let forward = darts[0] % 2 == 0;
        for &dt in darts {
            if (dt % 2 == 0) != forward {
                return Err("walk changes direction (colors stall or backtrack)".into());
            }
        }
        for k in 0..darts.len() {
            let a = self.edge_arc(self.dart_edge(darts[k]));
            let b = self.edge_arc(self.dart_edge(darts[(k + 1) % darts.len()]));
            let expected = if forward { (a + 1) % 3 } else { (a + 2) % 3 };
            if b != expected {
                return Err("arc labels do not advance cyclically".into());
            }
        }
        Ok(darts.len() / 3)
    }

    fn edge_vector(&self, darts: &[usize]) -> Bits {
        let mut v = bits_new(self.edge_count());
        for &dt in darts {
            bits_set(&mut v, self.dart_edge(dt));
        }
        v
    }

    /// Spanning tree with edges taken in ascending id (lexicographic dart)
    /// order.
    fn spanning_tree(&self) -> Vec<bool> {
        let mut in_tree = vec![false; self.edge_count()];
        let mut reached = vec![false; self.vertex_count()];
        reached[0] = true;
        let mut grew = true;
        while grew {
            grew = false;
            for e in 0..self.edge_count() {
                let (a, b) = self.edge_vertices(e);
                if reached[a] != reached[b] {
                    in_tree[e] = true;
                    reached[a] = true;
                    reached[b] = true;
                    grew = true;
                }
            }
        }
        in_tree
    }

    /// Restriction of a cycle-space vector to the cotree edges, a linear
    /// isomorphism on the cycle space.
    fn cotree_coords(&self, edges: &Bits, cotree_index: &[usize], n_cotree: usize) -> Bits {
        let mut v = bits_new(n_cotree);
        for e in 0..self.edge_count() {
            if bits_get(edges, e) && cotree_index[e] != usize::MAX {
                bits_set(&mut v, cotree_index[e]);
            }
        }
        v
    }

    fn cotree_indexing(&self) -> (Vec<usize>, usize) {
        let in_tree = self.spanning_tree();
        let mut cotree_index = vec![usize::MAX; self.edge_count()];
        let mut n = 0;
        for e in 0..self.edge_count() {
            if !in_tree[e] {
                cotree_index[e] = n;
                n += 1;
            }
        }
        (cotree_index, n)
    }

    fn face_basis(&self, cotree_index: &[usize], n_cotree: usize) -> Vec<Bits> {
        let mut basis: Vec<Bits> = Vec::new();
        for f in &self.faces {
            let mut v = self.cotree_coords(&self.edge_vector(&f.darts), cotree_index, n_cotree);
            reduce_against(&mut v, &basis);
            if !bits_is_zero(&v) {
                basis.push(v);
            }
        }
        basis
    }

    /// Rank of closed walks in mod-2 homology (cycle space modulo face
    /// boundaries), computed in spanning-tree cotree coordinates.
    pub fn homology_rank(&self, cycles: &[Vec<usize>]) -> Result<usize> {
        for c in cycles {
            self.check_closed_walk(c)?;
        }
        let (cotree_index, n_cotree) = self.cotree_indexing();
        let faces = self.face_basis(&cotree_index, n_cotree);
        let mut basis: Vec<Bits> = Vec::new();
        let mut rank = 0;
        for c in cycles {
            let mut v = self.cotree_coords(&self.edge_vector(c), &cotree_index, n_cotree);
            reduce_against(&mut v, &faces);
            reduce_against(&mut v, &basis);
            if !bits_is_zero(&v) {
                basis.push(v);
                rank += 1;
            }
        }
        Ok(rank)
    }

    /// Fundamental cycles of the underlying graph (one per cotree edge), as
    /// closed walks through the spanning tree; they span the cycle space.
    pub fn fundamental_cycles(&self) -> Vec<Vec<usize>> {
        let in_tree = self.spanning_tree();
        let mut parent_dart = vec![usize::MAX; self.vertex_count()];
        let mut discovered = vec![false; self.vertex_count()];
        discovered[0] = true;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for e in 0..self.edge_count() {
                if !in_tree[e] {
                    continue;
                }
                let (a, b) = self.edge_vertices(e);
                let (to, dt) = if a == v {
                    (b, 2 * e) // dart at a, edge toward b
                } else if b == v {
                    (a, 2 * e + 1)
                } else {
                    continue;
                };
                if !discovered[to] {
                    discovered[to] = true;
                    parent_dart[to] = dt;
                    queue.push_back(to);
                }
            }
        }
        // darts walking from v up to the root
        let path_to_root = |mut v: usize| -> Vec<usize> {
            let mut out = Vec::new();
            while parent_dart[v] != usize::MAX {
                let dt = parent_dart[v];
                out.push(dt ^ 1);
                v = self.vertex_of[dt];
            }
            out
        };
        let mut cycles = Vec::new();
        for e in 0..self.edge_count() {
            if in_tree[e] {
                continue;
            }
            let (a, b) = self.edge_vertices(e);
            let mut walk: Vec<usize> =
                path_to_root(a).into_iter().rev().map(|dt| dt ^ 1).collect();
            walk.push(2 * e);
            walk.extend(path_to_root(b));
            cycles.push(walk);
        }
        cycles
    }

    fn face_of_dart(&self) -> Vec<usize> {
        let mut out = vec![usize::MAX; 6 * self.degree()];
        for (f, face) in self.faces.iter().enumerate() {
            for &dt in &face.darts {
                out[dt] = f;
            }
        }
        out
    }

    /// Homology spanning set on the dual graph: fundamental cycles of the
    /// face-adjacency graph, each recorded as the set of primal edges it
    /// crosses. Pairing a primal cycle with these by shared-edge parity
    /// realizes the mod-2 intersection form — a route independent of the
    /// face-quotient rank above.
    pub fn dual_cycle_edge_sets(&self) -> Vec<Bits> {
        let face_of = self.face_of_dart();
        let n_faces = self.face_count();
        let mut in_tree = vec![false; self.edge_count()];
        let mut reached = vec![false; n_faces];
        reached[0] = true;
        let mut grew = true;
        while grew {
            grew = false;
            for e in 0..self.edge_count() {
                let (fa, fb) = (face_of[2 * e], face_of[2 * e + 1]);
                if reached[fa] != reached[fb] {
                    in_tree[e] = true;
                    reached[fa] = true;
                    reached[fb] = true;
                    grew = true;
                }
            }
        }
        let mut parent_edge = vec![usize::MAX; n_faces];
        let mut parent_face = vec![usize::MAX; n_faces];
        let mut depth = vec![0usize; n_faces];
        let mut done = vec![false; n_faces];
        done[0] = true;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(f) = queue.pop_front() {
            for e in 0..self.edge_count() {
                if !in_tree[e] {
                    continue;
                }
                let (fa, fb) = (face_of[2 * e], face_of[2 * e + 1]);
                let other = if fa == f {
                    fb
                } else if fb == f {
                    fa
                } else {
                    continue;
                };
                if !done[other] {
                    done[other] = true;
                    parent_edge[other] = e;
                    parent_face[other] = f;
                    depth[other] = depth[f] + 1;
                    queue.push_back(other);
                }
            }
        }
        let mut out = Vec::new();
        for e in 0..self.edge_count() {
            if in_tree[e] {
                continue;
            }
            let mut v = bits_new(self.edge_count());
            bits_set(&mut v, e);
            let (mut fa, mut fb) = (face_of[2 * e], face_of[2 * e + 1]);
            while fa != fb {
                if depth[fa] >= depth[fb] {
                    bits_set(&mut v, parent_edge[fa]);
                    fa = parent_face[fa];
                } else {
                    bits_set(&mut v, parent_edge[fb]);
                    fb = parent_face[fb];
                }
            }
            out.push(v);
        }
        out
    }
}

/// One covering loop: outgoing darts in walk order.
#[derive(Debug, Clone, Serialize)]
pub struct DessinLoop {
    pub darts: Vec<usize>,
    pub vertices: Vec<usize>,
    pub covering_degree: usize,
}

/// Pairwise vertex-disjoint, homologically independent covering loops.
#[derive(Debug, Clone, Serialize)]
pub struct LoopSet {
    pub loops: Vec<DessinLoop>,
}

impl LoopSet {
    /// Re-verifies every invariant from the returned data alone:
    /// disjointness, the covering condition, and homological independence
    /// through the intersection pairing against a dual-graph basis — a
    /// route separate from the face-quotient rank used by the search.
    pub fn verify(&self, dessin: &Dessin) -> Result<()> {
        let mut used = std::collections::BTreeSet::new();
        for l in &self.loops {
            match dessin.loop_is_covering(&l.darts) {
                Ok(deg) if deg == l.covering_degree => {}
                Ok(deg) => {
                    return Err(Error::NotACycle(format!(
                        "recorded covering degree {} but walk wraps {deg} times",
                        l.covering_degree
                    )))
                }
                Err(e) => return Err(Error::NotACycle(e)),
            }
            for &dt in &l.darts {
                if !used.insert(dessin.dart_vertex(dt)) {
                    return Err(Error::NotACycle("loops share a vertex".into()));
                }
            }
        }
        if self.loops.is_empty() {
            return Ok(());
        }
        let duals = dessin.dual_cycle_edge_sets();
        let rows: Vec<Vec<bool>> = self
            .loops
            .iter()
            .map(|l| {
                let edges = dessin.edge_vector(&l.darts);
                duals.iter().map(|d| bits_and_parity(&edges, d)).collect()
            })
            .collect();
        let rank = boolean_rank(rows);
        if rank != self.loops.len() {
            return Err(Error::NotACycle(format!(
                "intersection pairing rank {rank} below loop count {}",
                self.loops.len()
            )));
        }
        Ok(())
    }
}

/// Caps on the candidate-loop enumeration.
#[derive(Debug, Clone, Copy)]
pub struct SearchLimits {
    /// Longest candidate loop (multiples of 3).
    pub max_loop_len: usize,
    /// Candidate pool cap; enumeration stops when reached.
    pub max_candidates: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self { max_loop_len: 12, max_candidates: 40_000 }
    }
}

struct Candidate {
    darts: Vec<usize>,
    vertex_mask: Bits,
    class: Bits,
}

impl Dessin {
    /// Enumerates simple forward color-cyclic cycles by walk extension with
    /// color-advance pruning, canonically from each cycle's smallest vertex.
    fn covering_loop_candidates(&self, limits: &SearchLimits) -> Vec<Vec<usize>> {
        let d = self.degree();
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); self.vertex_count()];
        for arc in 0..ARCS {
            for s in 0..d {
                let dt = 2 * (arc * d + s);
                outgoing[self.vertex_of[dt]].push(dt);
            }
        }
        for v in &mut outgoing {
            v.sort_unstable();
        }

        let mut visited = vec![false; self.vertex_count()];
        let mut walk: Vec<usize> = Vec::new();
        for start in 0..self.vertex_count() {
            if out.len() >= limits.max_candidates {
                break;
            }
            visited[start] = true;
            self.extend_walk(start, start, &outgoing, &mut visited, &mut walk, limits, &mut out);
            visited[start] = false;
        }
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_walk(
        &self,
        start: usize,
        here: usize,
        outgoing: &[Vec<usize>],
        visited: &mut Vec<bool>,
        walk: &mut Vec<usize>,
        limits: &SearchLimits,
        out: &mut Vec<Vec<usize>>,
    ) {
        if out.len() >= limits.max_candidates {
            return;
        }
        for &dt in &outgoing[here] {
            let next = self.vertex_of[dt ^ 1];
            if next == start && !walk.is_empty() {
                // closing step; the length is automatically a multiple of 3
                walk.push(dt);
                out.push(walk.clone());
                walk.pop();
                continue;
            }
            // canonical form: the start is the smallest vertex on the cycle
            if next <= start || visited[next] || walk.len() + 1 >= limits.max_loop_len {
                continue;
            }
            visited[next] = true;
            walk.push(dt);
            self.extend_walk(start, next, outgoing, visited, walk, limits, out);
            walk.pop();
            visited[next] = false;
        }
    }

    /// Searches for `g_target` pairwise vertex-disjoint homologically
    /// independent covering loops by backtracking over the candidate pool,
    /// smallest loops first. Deterministic; `None` when the pool is
    /// exhausted without success.
    pub fn find_disjoint_loops(&self, g_target: usize, limits: &SearchLimits) -> Option<LoopSet> {
        if g_target == 0 {
            return Some(LoopSet { loops: Vec::new() });
        }
        let mut raw = self.covering_loop_candidates(limits);
        raw.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

        let (cotree_index, n_cotree) = self.cotree_indexing();
        let face_basis = self.face_basis(&cotree_index, n_cotree);

        let candidates: Vec<Candidate> = raw
            .into_iter()
            .filter_map(|darts| {
                let mut class =
                    self.cotree_coords(&self.edge_vector(&darts), &cotree_index, n_cotree);
                reduce_against(&mut class, &face_basis);
                if bits_is_zero(&class) {
                    return None; // nullhomologous loops can never help
                }
                let mut vertex_mask = bits_new(self.vertex_count());
                for &dt in &darts {
                    bits_set(&mut vertex_mask, self.vertex_of[dt]);
                }
                Some(Candidate { darts, vertex_mask, class })
            })
            .collect();

        let mut chosen: Vec<usize> = Vec::new();
        let mut used_vertices = bits_new(self.vertex_count());
        let mut basis: Vec<Bits> = Vec::new();
        if self.select_loops(&candidates, 0, g_target, &mut chosen, &mut used_vertices, &mut basis)
        {
            let loops = chosen
                .iter()
                .map(|&i| {
                    let darts = candidates[i].darts.clone();
                    let vertices = darts.iter().map(|&dt| self.vertex_of[dt]).collect();
                    let covering_degree = darts.len() / 3;
                    DessinLoop { darts, vertices, covering_degree }
                })
                .collect();
            return Some(LoopSet { loops });
        }
        None
    }

    fn select_loops(
        &self,
        candidates: &[Candidate],
        from: usize,
        g_target: usize,
        chosen: &mut Vec<usize>,
        used_vertices: &mut Bits,
        basis: &mut Vec<Bits>,
    ) -> bool {
        if chosen.len() == g_target {
            return true;
        }
        if from >= candidates.len() || candidates.len() - from < g_target - chosen.len() {
            return false;
        }
        for i in from..candidates.len() {
            let c = &candidates[i];
            if c.vertex_mask.iter().zip(used_vertices.iter()).any(|(a, b)| a & b != 0) {
                continue;
            }
            let mut reduced = c.class.clone();
            reduce_against(&mut reduced, basis);
            if bits_is_zero(&reduced) {
                continue; // dependent on the chosen classes
            }
            chosen.push(i);
            bits_xor(used_vertices, &c.vertex_mask);
            basis.push(reduced);
            if self.select_loops(candidates, i + 1, g_target, chosen, used_vertices, basis) {
                return true;
            }
            basis.pop();
            bits_xor(used_vertices, &c.vertex_mask);
            chosen.pop();
        }
        false
    }
}

/// Outcome of the budgeted search: on success the loops live in the dessin
/// of the input triple refined `stages` times.
#[derive(Debug)]
pub enum LoopSearchOutcome {
    Found { stages: usize, dessin: Dessin, loops: LoopSet },
    Exhausted { stages: usize, final_degree: usize },
}

/// Runs the loop search, refining the covering on failure, up to
/// `refine_budget` refinements. Exhaustion is reported, not fatal.
pub fn find_disjoint_loops_with_refinement(
    triple: &MonodromyTriple,
    g_target: usize,
    refine_budget: usize,
    limits: &SearchLimits,
) -> Result<LoopSearchOutcome> {
    let mut current = triple.clone();
    for stage in 0..=refine_budget {
        let dessin = Dessin::build(&current);
        if let Some(loops) = dessin.find_disjoint_loops(g_target, limits) {
            return Ok(LoopSearchOutcome::Found { stages: stage, dessin, loops });
        }
        if stage < refine_budget {
            current = current.refine()?;
        }
    }
    Ok(LoopSearchOutcome::Exhausted { stages: refine_budget, final_degree: current.degree() })
}

/// JSON export of the combinatorial map.
#[derive(Debug, Serialize)]
pub struct DessinExport {
    pub degree: usize,
    pub genus: usize,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub face_count: usize,
    pub euler_characteristic: i64,
    pub vertices: Vec<DessinVertex>,
    pub edges: Vec<EdgeExport>,
    pub faces: Vec<DessinFace>,
}

#[derive(Debug, Serialize)]
pub struct EdgeExport {
    pub id: usize,
    pub arc: usize,
    pub sheet: usize,
    pub from: usize,
    pub to: usize,
}

impl DessinExport {
    pub fn from_dessin(d: &Dessin) -> Self {
        let edges = (0..d.edge_count())
            .map(|e| {
                let (from, to) = d.edge_vertices(e);
                EdgeExport { id: e, arc: d.edge_arc(e), sheet: e % d.degree(), from, to }
            })
            .collect();
        Self {
            degree: d.degree(),
            genus: d.genus(),
            vertex_count: d.vertex_count(),
            edge_count: d.edge_count(),
            face_count: d.face_count(),
            euler_characteristic: d.euler_characteristic(),
            vertices: d.vertices().to_vec(),
            edges,
            faces: d.faces().to_vec(),
        }
    }
}
