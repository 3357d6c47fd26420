//! Geometric complexity measures recomputed the slow way: a full
//! Euclidean distance matrix, Kruskal's spanning tree over the complete
//! edge list, and exhaustive neighbor scans. Plain nested `Vec`s on
//! purpose; this code optimizes for being obviously correct.

/// Full Euclidean distance matrix.
pub fn distance_matrix(points: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = points.len();
    let mut d = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let dist = points[i]
                .iter()
                .zip(&points[j])
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            d[i][j] = dist;
            d[j][i] = dist;
        }
    }
    d
}

/// Maximum per-feature Fisher discriminant ratio between classes `a` and
/// `b`, population variances; infinity when a zero-variance feature still
/// separates the means, 0 contribution when it does not.
pub fn f1_pair(points: &[Vec<f64>], labels: &[usize], a: usize, b: usize) -> f64 {
    let dim = points[0].len();
    let stat = |class: usize, feature: usize| {
        let xs: Vec<f64> = labels
            .iter()
            .enumerate()
            .filter(|&(_, &l)| l == class)
            .map(|(i, _)| points[i][feature])
            .collect();
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
        (mean, var)
    };
    let mut best = 0.0f64;
    for feature in 0..dim {
        let (ma, va) = stat(a, feature);
        let (mb, vb) = stat(b, feature);
        let ratio = if va + vb == 0.0 {
            if ma == mb {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (ma - mb) * (ma - mb) / (va + vb)
        };
        best = best.max(ratio);
    }
    best
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

/// Fraction of points incident to a class-crossing edge of the Euclidean
/// minimum spanning tree, built by Kruskal over all n(n-1)/2 edges.
pub fn n1(points: &[Vec<f64>], labels: &[usize]) -> f64 {
    let n = points.len();
    let dist = distance_matrix(points);
    let mut edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    edges.sort_by(|&(a, b), &(c, d)| {
        dist[a][b]
            .total_cmp(&dist[c][d])
            .then(a.cmp(&c))
            .then(b.cmp(&d))
    });
    let mut uf = UnionFind::new(n);
    let mut boundary = vec![false; n];
    for (i, j) in edges {
        if uf.union(i, j) && labels[i] != labels[j] {
            boundary[i] = true;
            boundary[j] = true;
        }
    }
    boundary.iter().filter(|&&b| b).count() as f64 / n as f64
}

/// Sum of intra-class over sum of inter-class nearest-neighbor distances,
/// restricted to classes `a` and `b`; infinity when the inter sum is 0.
pub fn n2_pair(points: &[Vec<f64>], labels: &[usize], a: usize, b: usize) -> f64 {
    let dist = distance_matrix(points);
    let members: Vec<usize> = (0..points.len())
        .filter(|&i| labels[i] == a || labels[i] == b)
        .collect();
    let mut intra = 0.0;
    let mut inter = 0.0;
    for &i in &members {
        let mut same = f64::INFINITY;
        let mut other = f64::INFINITY;
        for &j in &members {
            if i == j {
                continue;
            }
            if labels[j] == labels[i] {
                same = same.min(dist[i][j]);
            } else {
                other = other.min(dist[i][j]);
            }
        }
        intra += same;
        inter += other;
    }
    if inter == 0.0 {
        f64::INFINITY
    } else {
        intra / inter
    }
}

/// Leave-one-out 1-nearest-neighbor error rate; ties go to the smaller
/// row index, matching the convention of the implementation under test.
pub fn n3(points: &[Vec<f64>], labels: &[usize]) -> f64 {
    let n = points.len();
    let dist = distance_matrix(points);
    let mut errors = 0usize;
    for i in 0..n {
        let mut nearest = usize::MAX;
        let mut best = f64::INFINITY;
        for (j, d) in dist[i].iter().enumerate() {
            if i != j && *d < best {
                best = *d;
                nearest = j;
            }
        }
        if labels[nearest] != labels[i] {
            errors += 1;
        }
    }
    errors as f64 / n as f64
}

/// Mean of a pairwise measure over all unordered class pairs, skipping
/// infinity sentinels; infinity when every pair degenerates.
pub fn pair_mean(k: usize, pair: impl Fn(usize, usize) -> f64) -> f64 {
    let mut sum = 0.0;
    let mut count = 0usize;
    for a in 0..k {
        for b in (a + 1)..k {
            let v = pair(a, b);
            if v.is_finite() {
                sum += v;
                count += 1;
            }
        }
    }
    if count == 0 {
        f64::INFINITY
    } else {
        sum / count as f64
    }
}
