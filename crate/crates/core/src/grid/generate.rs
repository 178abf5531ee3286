//! Known-answer fixtures and the seeded random generator.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Component, GridLink, LatticePoint, Move};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GenerateError {
    #[error("size L={0} is too small (need L >= 2)")]
    SizeTooSmall(i32),
    #[error("at least one component is required")]
    NoComponents,
    #[error("{components} components do not fit in a box of size L={size}")]
    Infeasible { size: i32, components: usize },
}

fn p(x: i32, y: i32, z: i32) -> LatticePoint {
    LatticePoint::new(x, y, z)
}

fn link_from_cycles(size: i32, cycles: &[Vec<LatticePoint>]) -> GridLink {
    let comps = cycles.iter().map(|c| Component::from_cycle(c).expect("cycle of lattice neighbours")).collect();
    let link = GridLink::from_parts_unchecked(size, comps);
    debug_assert!(super::validate(&link).is_empty(), "{:?}", super::validate(&link));
    link
}

/// Boundary of the square `[0, L] x [0, L]` in the plane `z = 0`.
pub fn make_unknot(size: i32) -> GridLink {
    let size = size.max(1);
    let mut cycle = Vec::new();
    cycle.extend((0..size).map(|x| p(x, 0, 0)));
    cycle.extend((0..size).map(|y| p(size, y, 0)));
    cycle.extend((0..size).map(|x| p(size - x, size, 0)));
    cycle.extend((0..size).map(|y| p(0, size - y, 0)));
    GridLink::from_parts_unchecked(size, vec![Component::from_cycle(&cycle).unwrap()])
}

/// Two interlocked rectangles in a box of size 3: a horizontal square at
/// height 1 and a vertical rectangle in the plane `x = 1` threading it.
pub fn make_hopf_link() -> GridLink {
    let a = vec![p(0, 0, 1), p(1, 0, 1), p(2, 0, 1), p(2, 1, 1), p(2, 2, 1), p(1, 2, 1), p(0, 2, 1), p(0, 1, 1)];
    let b = vec![p(1, 1, 0), p(1, 1, 1), p(1, 1, 2), p(1, 2, 2), p(1, 3, 2), p(1, 3, 1), p(1, 3, 0), p(1, 2, 0)];
    link_from_cycles(3, &[a, b])
}

fn torus_cycles(k: i32) -> (Vec<LatticePoint>, Vec<LatticePoint>) {
    let w = 2 * k;
    // Flat rectangle [0, 2k] x [0, 2] at height 1.
    let mut a = Vec::new();
    a.extend((0..w).map(|x| p(x, 0, 1)));
    a.extend((0..2).map(|y| p(w, y, 1)));
    a.extend((0..w).map(|x| p(w - x, 2, 1)));
    a.extend((0..2).map(|y| p(0, 2 - y, 1)));

    // A coil that passes down through the rectangle at x = 1, 3, .., 2k-1
    // and back up outside it at y = 3, then returns above everything.
    let mut b = Vec::new();
    for i in 0..k {
        let x = 2 * i + 1;
        b.extend([p(x, 1, 2), p(x, 1, 1), p(x, 1, 0), p(x, 2, 0), p(x, 3, 0), p(x, 3, 1), p(x, 3, 2)]);
        if i + 1 < k {
            b.extend([p(x + 1, 3, 2), p(x + 1, 2, 2), p(x + 1, 1, 2)]);
        }
    }
    let last = 2 * k - 1;
    b.extend((0..last).map(|d| p(last - d, 3, 3)));
    b.extend([p(1, 3, 3), p(1, 2, 3), p(1, 1, 3)]);
    b.dedup();
    (a, b)
}

/// Grid realization of the `(2, 2k)` torus link, in a box of size
/// `max(2k, 3)`. `k = 1` is a Hopf link.
pub fn make_torus_link(k: i32) -> GridLink {
    let k = k.max(1);
    let (a, b) = torus_cycles(k);
    link_from_cycles((2 * k).max(3), &[a, b])
}

/// Boustrophedon path through the rectangle `xs x ys` starting at `start`
/// (a corner). Row-wise paths run along x inside each row.
fn layer_path(xs: (i32, i32), ys: (i32, i32), start: (i32, i32), row_wise: bool, z: i32) -> Vec<LatticePoint> {
    let flip = |v: i32, lo: i32, hi: i32| if v == lo { hi } else { lo };
    let mut out = Vec::new();
    if row_wise {
        let (mut x0, mut x1) = (start.0, flip(start.0, xs.0, xs.1));
        let ys_iter: Vec<i32> = if start.1 == ys.0 { (ys.0..=ys.1).collect() } else { (ys.0..=ys.1).rev().collect() };
        for y in ys_iter {
            let step = if x1 >= x0 { 1 } else { -1 };
            let mut x = x0;
            loop {
                out.push(p(x, y, z));
                if x == x1 {
                    break;
                }
                x += step;
            }
            std::mem::swap(&mut x0, &mut x1);
        }
    } else {
        let (mut y0, mut y1) = (start.1, flip(start.1, ys.0, ys.1));
        let xs_iter: Vec<i32> = if start.0 == xs.0 { (xs.0..=xs.1).collect() } else { (xs.0..=xs.1).rev().collect() };
        for x in xs_iter {
            let step = if y1 >= y0 { 1 } else { -1 };
            let mut y = y0;
            loop {
                out.push(p(x, y, z));
                if y == y1 {
                    break;
                }
                y += step;
            }
            std::mem::swap(&mut y0, &mut y1);
        }
    }
    out
}

/// A dense cycle filling the box `[x0, x1] x [y0, y1] x [z0, z1]`.
///
/// Layers `z0..z1` fill the columns `x > x0` with boustrophedon paths that
/// alternate between running along x and along y, so that strands of
/// consecutive layers cross. The top layer and the plane `x = x0` carry the
/// return path.
fn dense_cycle(xr: (i32, i32), yr: (i32, i32), zr: (i32, i32)) -> Vec<LatticePoint> {
    let region_x = (xr.0 + 1, xr.1);
    let mut cycle = Vec::new();
    let mut corner = (region_x.0, yr.0);
    for (i, z) in (zr.0..zr.1).enumerate() {
        let layer = layer_path(region_x, yr, corner, i % 2 == 0, z);
        let last = *layer.last().unwrap();
        corner = (last.x, last.y);
        cycle.extend(layer);
    }
    let (xf, yf) = corner;
    cycle.extend((0..=(xf - xr.0)).map(|d| p(xf - d, yf, zr.1)));
    cycle.extend((1..=(zr.1 - zr.0)).map(|d| p(xr.0, yf, zr.1 - d)));
    cycle.extend((1..=(yf - yr.0)).map(|d| p(xr.0, yf - d, zr.0)));
    cycle
}

/// A single cycle visiting all but `O(L^2)` vertices of the box `[0, L]^3`.
pub fn make_dense_fill(size: i32) -> GridLink {
    let size = size.max(1);
    link_from_cycles(size, &[dense_cycle((0, size), (0, size), (0, size))])
}

/// Two dense cycles stacked vertically, filling the box `[0, L]^3` (L >= 3).
pub fn make_dense_pair(size: i32) -> GridLink {
    let size = size.max(3);
    let h = (size - 1) / 2;
    let lower = dense_cycle((0, size), (0, size), (0, h));
    let upper = dense_cycle((0, size), (0, size), (h + 1, size));
    link_from_cycles(size, &[lower, upper])
}

fn rectangle(size: i32, z: i32) -> Vec<LatticePoint> {
    make_unknot(size).components()[0].vertices().take(4 * size as usize).map(|q| p(q.x, q.y, z)).collect()
}

/// Random local deformations of a set of lattice cycles.
struct Mixer {
    size: i32,
    occupied: Vec<bool>,
    cycles: Vec<Vec<LatticePoint>>,
}

const PERPENDICULAR: [[Move; 4]; 3] =
    [[Move::N, Move::S, Move::U, Move::D], [Move::E, Move::W, Move::U, Move::D], [Move::E, Move::W, Move::N, Move::S]];

impl Mixer {
    fn new(size: i32, cycles: Vec<Vec<LatticePoint>>) -> Self {
        let side = (size + 1) as usize;
        let mut m = Self { size, occupied: vec![false; side * side * side], cycles };
        for c in m.cycles.clone() {
            for q in c {
                let i = m.index(q);
                m.occupied[i] = true;
            }
        }
        m
    }

    fn index(&self, q: LatticePoint) -> usize {
        let side = (self.size + 1) as usize;
        (q.x as usize * side + q.y as usize) * side + q.z as usize
    }

    fn free(&self, q: LatticePoint) -> bool {
        q.in_box(self.size) && !self.occupied[self.index(q)]
    }

    fn set(&mut self, q: LatticePoint, v: bool) {
        let i = self.index(q);
        self.occupied[i] = v;
    }

    /// Replaces edge `v[i] -> v[i+1]` by a detour around a unit square.
    fn insert_detour(&mut self, c: usize, i: usize, side: Move) -> bool {
        let cyc = &self.cycles[c];
        let (a, b) = (cyc[i], cyc[(i + 1) % cyc.len()]);
        let mv = Move::between(a, b).unwrap();
        if side.axis() == mv.axis() {
            return false;
        }
        let (pa, pb) = (a.step(side), b.step(side));
        if !self.free(pa) || !self.free(pb) {
            return false;
        }
        self.set(pa, true);
        self.set(pb, true);
        let cyc = &mut self.cycles[c];
        cyc.insert(i + 1, pb);
        cyc.insert(i + 1, pa);
        true
    }

    /// Removes a unit-square detour `u, m, -u` starting at `v[i]`.
    fn remove_detour(&mut self, c: usize, i: usize) -> bool {
        let cyc = &self.cycles[c];
        let n = cyc.len();
        if n < 6 {
            return false;
        }
        let v: Vec<LatticePoint> = (0..4).map(|k| cyc[(i + k) % n]).collect();
        let d1 = Move::between(v[0], v[1]).unwrap();
        let d2 = Move::between(v[1], v[2]).unwrap();
        let d3 = Move::between(v[2], v[3]).unwrap();
        if d3 != d1.negate() || d2.axis() == d1.axis() {
            return false;
        }
        self.set(v[1], false);
        self.set(v[2], false);
        let (j, k) = ((i + 1) % n, (i + 2) % n);
        let cyc = &mut self.cycles[c];
        cyc.remove(j.max(k));
        cyc.remove(j.min(k));
        true
    }

    /// Flips the corner at `v[i+1]` across its unit square.
    fn flip_corner(&mut self, c: usize, i: usize) -> bool {
        let cyc = &self.cycles[c];
        let n = cyc.len();
        let (a, b, d) = (cyc[i], cyc[(i + 1) % n], cyc[(i + 2) % n]);
        let d1 = Move::between(a, b).unwrap();
        let d2 = Move::between(b, d).unwrap();
        if d1.axis() == d2.axis() {
            return false;
        }
        let q = a.step(d2);
        if !self.free(q) {
            return false;
        }
        self.set(b, false);
        self.set(q, true);
        self.cycles[c][(i + 1) % n] = q;
        true
    }

    fn mix(&mut self, rng: &mut ChaCha8Rng, steps: u64) {
        for _ in 0..steps {
            let total: usize = self.cycles.iter().map(|c| c.len()).sum();
            let mut i = rng.gen_range(0..total);
            let mut c = 0;
            while i >= self.cycles[c].len() {
                i -= self.cycles[c].len();
                c += 1;
            }
            match rng.gen_range(0..3) {
                0 => {
                    let mv = Move::between(self.cycles[c][i], self.cycles[c][(i + 1) % self.cycles[c].len()]).unwrap();
                    let side = PERPENDICULAR[mv.axis() as usize][rng.gen_range(0..4)];
                    self.insert_detour(c, i, side);
                }
                1 => {
                    self.remove_detour(c, i);
                }
                _ => {
                    self.flip_corner(c, i);
                }
            }
        }
    }
}

/// Applies `steps` seeded random local moves to a valid link. Components
/// keep their labels, orientations and isotopy classes.
pub fn mix_grid_link(link: &GridLink, seed: u64, steps: u64) -> GridLink {
    let cycles = link.components().iter().map(|c| c.vertices().take(c.moves.len()).collect()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mixer = Mixer::new(link.size(), cycles);
    mixer.mix(&mut rng, steps);
    link_from_cycles(link.size(), &mixer.cycles)
}

/// A random valid grid link, deterministic in `(size, components, seed, mix_steps)`.
///
/// One component starts from [`make_dense_fill`]. Several components start
/// from stacked flat rectangles, where the first two are replaced, when the
/// box allows, by a `(2, 2k)` torus link with random `k >= 0`. Components are
/// then randomly reoriented and relabelled, and `mix_steps` random local
/// moves (unit-square detour insertion and removal, corner flips) are
/// applied, each accepted only if the curve stays self-avoiding and in the
/// box.
pub fn random_grid_link(size: i32, components: usize, seed: u64, mix_steps: u64) -> Result<GridLink, GenerateError> {
    if size < 2 {
        return Err(GenerateError::SizeTooSmall(size));
    }
    if components == 0 {
        return Err(GenerateError::NoComponents);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cycles: Vec<Vec<LatticePoint>> = if components == 1 {
        vec![dense_cycle((0, size), (0, size), (0, size))]
    } else {
        let extra = components as i32 - 2;
        // The torus construction occupies heights 0..=3 and x in [0, 2k].
        let k_max = if size >= 3 && 4 + extra <= size + 1 { size / 2 } else { 0 };
        let k = if k_max > 0 { rng.gen_range(0..=k_max) } else { 0 };
        if k > 0 {
            let (a, b) = torus_cycles(k);
            let mut cs = vec![a, b];
            cs.extend((0..extra).map(|i| rectangle(size, 4 + i)));
            cs
        } else {
            if components as i32 > size + 1 {
                return Err(GenerateError::Infeasible { size, components });
            }
            (0..components as i32).map(|i| rectangle(size, i)).collect()
        }
    };
    for c in cycles.iter_mut() {
        if rng.gen_bool(0.5) {
            c.reverse();
        }
    }
    for i in (1..cycles.len()).rev() {
        let j = rng.gen_range(0..=i);
        cycles.swap(i, j);
    }
    let mut mixer = Mixer::new(size, cycles);
    mixer.mix(&mut rng, mix_steps);
    Ok(link_from_cycles(size, &mixer.cycles))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::validate;

    #[test]
    fn mixing_keeps_links_valid() {
        let link = make_dense_pair(4);
        let mixed = mix_grid_link(&link, 3, 5_000);
        assert!(validate(&mixed).is_empty());
        assert_ne!(mixed, link);
        assert_eq!(mixed, mix_grid_link(&link, 3, 5_000));
        assert_eq!(mixed.component_count(), 2);
    }

    #[test]
    fn fixtures_are_valid() {
        for l in 1..6 {
            assert!(validate(&make_unknot(l)).is_empty());
            assert!(validate(&make_dense_fill(l)).is_empty(), "dense fill L={l}");
        }
        for l in 3..7 {
            assert!(validate(&make_dense_pair(l)).is_empty(), "dense pair L={l}");
        }
        assert!(validate(&make_hopf_link()).is_empty());
        for k in 1..6 {
            let t = make_torus_link(k);
            assert!(validate(&t).is_empty(), "torus k={k}");
            assert_eq!(t.size(), (2 * k).max(3));
        }
    }

    #[test]
    fn dense_fill_edge_count() {
        // The box has (L+1)^3 vertices; the cycle misses O(L^2) of them.
        for l in [2, 3, 4, 6, 8] {
            let n = make_dense_fill(l).edge_count() as i64;
            let l = l as i64;
            assert!(n >= l * l * l, "L={l}: {n}");
            assert!(n <= (l + 1).pow(3));
        }
        // L=4: four layers of 4 x 5 vertices, then the return path ends the
        // last layer at (1, 0, 3): two vertices on top, four down the x = 0 column.
        assert_eq!(make_dense_fill(4).edge_count(), 4 * 4 * 5 + 2 + 4);
    }

    #[test]
    fn random_is_deterministic_and_valid() {
        let a = random_grid_link(4, 1, 7, 10_000).unwrap();
        let b = random_grid_link(4, 1, 7, 10_000).unwrap();
        assert_eq!(a, b);
        let c = random_grid_link(4, 2, 7, 10_000).unwrap();
        assert!(validate(&c).is_empty());
        assert_eq!(c.component_count(), 2);
        assert!(c.components().iter().all(|c| c.moves.len() >= 4));
    }

    #[test]
    fn random_rejects_bad_requests() {
        assert_eq!(random_grid_link(1, 1, 0, 0), Err(GenerateError::SizeTooSmall(1)));
        assert_eq!(random_grid_link(3, 0, 0, 0), Err(GenerateError::NoComponents));
        assert_eq!(random_grid_link(2, 4, 0, 0), Err(GenerateError::Infeasible { size: 2, components: 4 }));
    }
}
