//! Sampling oracle for area/area topological predicates.
//!
//! Works only on convex polygons with integer vertices given counter-clockwise
//! and unclosed. Point classification uses half-plane signs, which are exact
//! for integer vertices and for sample points lying on an edge by
//! construction. Nothing here calls into the kernel.

use rand::rngs::StdRng;
use rand::Rng;

pub type Pt = (f64, f64);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Loc {
    Interior,
    Boundary,
    Exterior,
}

impl Loc {
    fn index(self) -> usize {
        match self {
            Loc::Interior => 0,
            Loc::Boundary => 1,
            Loc::Exterior => 2,
        }
    }
}

fn cross(o: Pt, a: Pt, b: Pt) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Location of `p` relative to a convex counter-clockwise polygon.
pub fn classify(p: Pt, poly: &[Pt]) -> Loc {
    let mut on_line = false;
    for i in 0..poly.len() {
        let c = cross(poly[i], poly[(i + 1) % poly.len()], p);
        if c < 0.0 {
            return Loc::Exterior;
        }
        on_line |= c == 0.0;
    }
    if on_line {
        Loc::Boundary
    } else {
        Loc::Interior
    }
}

/// Rows: I, B, E of `a`; columns: I, B, E of `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Matrix(pub [[bool; 3]; 3]);

impl Matrix {
    fn mark(&mut self, la: Loc, lb: Loc) {
        self.0[la.index()][lb.index()] = true;
    }

    /// Checks a nine-character pattern of `T`, `F` and `*`, row-major.
    pub fn matches(&self, pattern: &str) -> bool {
        pattern.chars().enumerate().all(|(i, c)| {
            let cell = self.0[i / 3][i % 3];
            match c {
                'T' => cell,
                'F' => !cell,
                _ => true,
            }
        })
    }

    pub fn matches_any(&self, patterns: &[&str]) -> bool {
        patterns.iter().any(|p| self.matches(p))
    }
}

/// Oracle verdict for one of the ten predicate names, both polygons being areas.
pub fn predicate(name: &str, m: &Matrix) -> bool {
    match name {
        "intersects" => !m.matches("FF*FF****"),
        "disjoint" => m.matches("FF*FF****"),
        "contains" => m.matches("T*****FF*"),
        "within" => m.matches("T*F**F***"),
        "covers" => m.matches_any(&["T*****FF*", "*T****FF*", "***T**FF*", "****T*FF*"]),
        "coveredBy" => m.matches_any(&["T*F**F***", "*TF**F***", "**FT*F***", "**F*TF***"]),
        "touches" => m.matches_any(&["FT*******", "F**T*****", "F***T****"]),
        "overlaps" => m.matches("T*T***T**"),
        "crosses" => false,
        "equalsTop" => m.matches("T*F**FFF*"),
        other => panic!("no oracle for {other}"),
    }
}

fn bbox(poly: &[Pt]) -> (f64, f64, f64, f64) {
    poly.iter().fold((f64::MAX, f64::MAX, f64::MIN, f64::MIN), |b, p| {
        (b.0.min(p.0), b.1.min(p.1), b.2.max(p.0), b.3.max(p.1))
    })
}

/// At least `min` points of the interior of `poly` on a regular grid shifted
/// off the integer lattice.
pub fn interior_samples(poly: &[Pt], min: usize) -> Vec<Pt> {
    let (x0, y0, x1, y1) = bbox(poly);
    let mut n = ((min as f64).sqrt() as usize).max(8);
    loop {
        let (hx, hy) = ((x1 - x0) / n as f64, (y1 - y0) / n as f64);
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let p = (x0 + (i as f64 + 0.5137) * hx, y0 + (j as f64 + 0.4729) * hy);
                if classify(p, poly) == Loc::Interior {
                    out.push(p);
                }
            }
        }
        if out.len() >= min {
            return out;
        }
        n = n * 3 / 2 + 1;
    }
}

/// Vertices plus `per_edge` points along every edge.
pub fn boundary_samples(poly: &[Pt], per_edge: usize) -> Vec<Pt> {
    let mut out = Vec::new();
    for i in 0..poly.len() {
        let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
        out.push(a);
        for k in 1..=per_edge {
            let t = k as f64 / (per_edge + 1) as f64;
            out.push((a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1)));
        }
    }
    out
}

fn sign(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

fn on_segment(p: Pt, a: Pt, b: Pt) -> bool {
    cross(a, b, p) == 0.0 && p.0 >= a.0.min(b.0) && p.0 <= a.0.max(b.0) && p.1 >= a.1.min(b.1) && p.1 <= a.1.max(b.1)
}

/// Exact closed-segment intersection test for integer endpoints.
pub fn segments_meet(a: Pt, b: Pt, c: Pt, d: Pt) -> bool {
    let (d1, d2) = (sign(cross(c, d, a)), sign(cross(c, d, b)));
    let (d3, d4) = (sign(cross(a, b, c)), sign(cross(a, b, d)));
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    on_segment(a, c, d) || on_segment(b, c, d) || on_segment(c, a, b) || on_segment(d, a, b)
}

fn edges(poly: &[Pt]) -> impl Iterator<Item = (Pt, Pt)> + '_ {
    (0..poly.len()).map(move |i| (poly[i], poly[(i + 1) % poly.len()]))
}

/// Points in a small disc around every proper crossing of an edge of `a` with
/// an edge of `b`.
pub fn crossing_probes(a: &[Pt], b: &[Pt]) -> Vec<Pt> {
    let mut out = Vec::new();
    for (p, q) in edges(a) {
        for (r, s) in edges(b) {
            let den = cross((0.0, 0.0), (q.0 - p.0, q.1 - p.1), (s.0 - r.0, s.1 - r.1));
            if den == 0.0 || !segments_meet(p, q, r, s) {
                continue;
            }
            let t = cross(p, r, s) / den;
            let x = (p.0 + t * (q.0 - p.0), p.1 + t * (q.1 - p.1));
            for radius in [1e-3, 1e-5] {
                for k in 0..16 {
                    let ang = (k as f64 + 0.37) * std::f64::consts::TAU / 16.0;
                    out.push((x.0 + radius * ang.cos(), x.1 + radius * ang.sin()));
                }
            }
        }
    }
    out
}

/// Sampled intersection matrix of `a` against `b`.
pub fn sample_matrix(a: &[Pt], b: &[Pt], interior_min: usize) -> Matrix {
    let mut m = Matrix::default();
    m.mark(Loc::Exterior, Loc::Exterior);
    for p in interior_samples(a, interior_min) {
        m.mark(Loc::Interior, classify(p, b));
    }
    for p in interior_samples(b, interior_min) {
        m.mark(classify(p, a), Loc::Interior);
    }
    for p in boundary_samples(a, 64) {
        m.mark(Loc::Boundary, classify(p, b));
    }
    for p in boundary_samples(b, 64) {
        m.mark(classify(p, a), Loc::Boundary);
    }
    for p in crossing_probes(a, b) {
        m.mark(classify(p, a), classify(p, b));
    }
    if edges(a).any(|(p, q)| edges(b).any(|(r, s)| segments_meet(p, q, r, s))) {
        m.mark(Loc::Boundary, Loc::Boundary);
    }
    m
}

/// Convex hull of integer points, counter-clockwise, no collinear vertices.
pub fn convex_hull(mut pts: Vec<Pt>) -> Vec<Pt> {
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Pt> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Pt> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Random convex polygon with integer vertices inside `[0, 20]²`.
pub fn random_convex(rng: &mut StdRng) -> Vec<Pt> {
    let (x0, y0) = (rng.gen_range(0..=14), rng.gen_range(0..=14));
    let (w, h) = (rng.gen_range(3..=20 - x0), rng.gen_range(3..=20 - y0));
    convex_in(rng, (x0, y0, w, h))
}

/// Random convex polygon with integer vertices in the box `(x0, y0, w, h)`.
pub fn convex_in(rng: &mut StdRng, (x0, y0, w, h): (i32, i32, i32, i32)) -> Vec<Pt> {
    loop {
        let n = rng.gen_range(3..=8);
        let pts = (0..n)
            .map(|_| ((x0 + rng.gen_range(0..=w)) as f64, (y0 + rng.gen_range(0..=h)) as f64))
            .collect();
        let hull = convex_hull(pts);
        if hull.len() >= 3 {
            return hull;
        }
    }
}

/// No vertex of either polygon lies on the other's boundary, so the pair has
/// no shared vertices and no collinear shared edges.
pub fn in_general_position(a: &[Pt], b: &[Pt]) -> bool {
    a.iter().all(|p| classify(*p, b) != Loc::Boundary) && b.iter().all(|p| classify(*p, a) != Loc::Boundary)
}

/// A pair in general position. About a third of the pairs are drawn nested
/// so containment comes up often enough to matter; the order is random.
pub fn random_pair(rng: &mut StdRng) -> (Vec<Pt>, Vec<Pt>) {
    loop {
        let a = random_convex(rng);
        let b = if rng.gen_ratio(1, 3) {
            let (x0, y0, x1, y1) = bbox(&a);
            let (x0, y0, x1, y1) = (x0 as i32, y0 as i32, x1 as i32, y1 as i32);
            let (w, h) = ((x1 - x0) / 2, (y1 - y0) / 2);
            if w < 1 || h < 1 {
                continue;
            }
            convex_in(rng, (x0 + w / 2, y0 + h / 2, w, h))
        } else {
            random_convex(rng)
        };
        if in_general_position(&a, &b) {
            return if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
        }
    }
}

/// Closed ring as the kernel expects it.
pub fn closed_ring(poly: &[Pt]) -> Vec<[f64; 2]> {
    poly.iter().chain(poly.first()).map(|p| [p.0, p.1]).collect()
}
