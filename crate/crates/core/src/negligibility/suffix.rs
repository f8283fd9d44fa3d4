//! Suffix array with LCP and constant-time longest-common-extension queries.

/// Suffix array over an integer alphabet, built by prefix doubling.
#[derive(Debug, Clone)]
pub struct SuffixArray {
    sa: Vec<usize>,
    rank: Vec<usize>,
    lcp: Vec<usize>,
}

impl SuffixArray {
    pub fn new(text: &[u32]) -> Self {
        let n = text.len();
        let mut sa: Vec<usize> = (0..n).collect();
        let mut rank: Vec<usize> = text.iter().map(|&c| c as usize).collect();
        let mut tmp = vec![0usize; n];
        let mut k = 1;
        loop {
            if n <= 1 {
                break;
            }
            let key = |i: usize, rank: &[usize]| (rank[i], if i + k < n { rank[i + k] + 1 } else { 0 });
            sa.sort_unstable_by_key(|&i| key(i, &rank));
            tmp[sa[0]] = 0;
            for w in 1..n {
                let bump = usize::from(key(sa[w - 1], &rank) != key(sa[w], &rank));
                tmp[sa[w]] = tmp[sa[w - 1]] + bump;
            }
            std::mem::swap(&mut rank, &mut tmp);
            if rank[sa[n - 1]] == n - 1 {
                break;
            }
            k *= 2;
        }
        if n == 1 {
            rank[0] = 0;
        }
        let lcp = kasai(text, &sa, &rank);
        SuffixArray { sa, rank, lcp }
    }

    pub fn len(&self) -> usize {
        self.sa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sa.is_empty()
    }

    /// Suffix start positions in lexicographic order.
    pub fn order(&self) -> &[usize] {
        &self.sa
    }

    /// `lcp()[i]` is the common prefix length of suffixes `sa[i-1]` and `sa[i]`.
    pub fn lcp(&self) -> &[usize] {
        &self.lcp
    }

    pub fn rank_of(&self, pos: usize) -> usize {
        self.rank[pos]
    }
}

fn kasai(text: &[u32], sa: &[usize], rank: &[usize]) -> Vec<usize> {
    let n = text.len();
    let mut lcp = vec![0usize; n];
    let mut h = 0usize;
    for i in 0..n {
        if rank[i] == 0 {
            h = 0;
            continue;
        }
        let j = sa[rank[i] - 1];
        while i + h < n && j + h < n && text[i + h] == text[j + h] {
            h += 1;
        }
        lcp[rank[i]] = h;
        h = h.saturating_sub(1);
    }
    lcp
}

/// Longest-common-extension oracle: `lce(i, j)` is the length of the
/// longest common prefix of the suffixes starting at `i` and `j`.
#[derive(Debug, Clone)]
pub struct Lce {
    sa: SuffixArray,
    len: usize,
    // sparse[level][i] = min lcp over lcp[i .. i + 2^level)
    sparse: Vec<Vec<usize>>,
}

impl Lce {
    pub fn new(text: &[u32]) -> Self {
        let sa = SuffixArray::new(text);
        let n = text.len();
        let mut sparse = vec![sa.lcp().to_vec()];
        let mut width = 1;
        while 2 * width <= n {
            let prev = sparse.last().unwrap();
            let next: Vec<usize> = (0..=n - 2 * width).map(|i| prev[i].min(prev[i + width])).collect();
            sparse.push(next);
            width *= 2;
        }
        Lce { sa, len: n, sparse }
    }

    pub fn lce(&self, i: usize, j: usize) -> usize {
        if i == j {
            return self.len - i;
        }
        let (ri, rj) = (self.sa.rank_of(i), self.sa.rank_of(j));
        let (lo, hi) = if ri < rj { (ri + 1, rj + 1) } else { (rj + 1, ri + 1) };
        let level = (usize::BITS - 1 - (hi - lo).leading_zeros()) as usize;
        self.sparse[level][lo].min(self.sparse[level][hi - (1 << level)])
    }
}
