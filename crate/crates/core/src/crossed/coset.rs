use super::{CrossedError, FreeWord};
use crate::groupring::{FiniteGroup, Group};

/// The finite group `⟨E | R⟩` found by coset enumeration over the trivial
/// subgroup, with the images of the generators.
#[derive(Clone, Debug)]
pub struct Enumerated {
    pub group: Group,
    pub generators: Vec<usize>,
}

impl Enumerated {
    /// Image of a word in the group.
    pub fn eval(&self, w: &FreeWord) -> usize {
        w.letters().iter().fold(0, |acc, &(g, e)| {
            let x = self.generators[g];
            self.group.mul(acc, if e == 1 { x } else { self.group.inv(x) })
        })
    }
}

struct Table {
    cols: usize,
    rows: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    queue: Vec<usize>,
    bound: usize,
}

fn inv(x: usize) -> usize {
    x ^ 1
}

impl Table {
    fn rep(&mut self, mut c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[c] != root {
            let next = self.parent[c];
            self.parent[c] = root;
            c = next;
        }
        root
    }

    fn define(&mut self, c: usize, x: usize) -> Result<(), CrossedError> {
        if self.rows.len() >= self.bound {
            return Err(CrossedError::EnumerationBound(self.bound));
        }
        let d = self.rows.len();
        self.rows.push(vec![None; self.cols]);
        self.parent.push(d);
        self.rows[c][x] = Some(d);
        self.rows[d][inv(x)] = Some(c);
        Ok(())
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.parent[hi] = lo;
        self.queue.push(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let Some(f) = self.rows[e][x] else { continue };
                self.rows[f][inv(x)] = None;
                let (e1, f1) = (self.rep(e), self.rep(f));
                if let Some(t) = self.rows[e1][x] {
                    self.merge(f1, t);
                } else if let Some(t) = self.rows[f1][inv(x)] {
                    self.merge(e1, t);
                } else {
                    self.rows[e1][x] = Some(f1);
                    self.rows[f1][inv(x)] = Some(e1);
                }
            }
        }
        self.queue.clear();
    }

    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> Result<(), CrossedError> {
        if w.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len() - 1);
        loop {
            while i <= j {
                match self.rows[f][w[i]] {
                    Some(t) => {
                        f = t;
                        i += 1;
                    }
                    None => break,
                }
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i {
                match self.rows[b][inv(w[j])] {
                    Some(t) => {
                        b = t;
                        if j == 0 {
                            self.coincidence(f, b);
                            return Ok(());
                        }
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                self.rows[f][w[i]] = Some(b);
                self.rows[b][inv(w[i])] = Some(f);
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }
}

/// Hasse–Low–Todd–Coxeter enumeration with at most `bound` cosets defined.
pub fn enumerate(alphabet: usize, relators: &[FreeWord], bound: usize) -> Result<Enumerated, CrossedError> {
    let cols = 2 * alphabet;
    let mut t = Table { cols, rows: vec![vec![None; cols]], parent: vec![0], queue: Vec::new(), bound };
    let rels: Vec<Vec<usize>> = relators.iter().map(|r| r.letters().iter().map(|&(g, e)| 2 * g + usize::from(e == -1)).collect()).collect();
    let mut c = 0;
    while c < t.rows.len() {
        for r in &rels {
            if !t.live(c) {
                break;
            }
            t.scan_and_fill(c, r)?;
        }
        for x in 0..cols {
            if !t.live(c) {
                break;
            }
            if t.rows[c][x].is_none() {
                t.define(c, x)?;
            }
        }
        c += 1;
    }
    let live: Vec<usize> = (0..t.rows.len()).filter(|&c| t.live(c)).collect();
    let mut index = vec![usize::MAX; t.rows.len()];
    for (i, &c) in live.iter().enumerate() {
        index[c] = i;
    }
    let act: Vec<Vec<usize>> = live.iter().map(|&c| (0..cols).map(|x| index[t.rows[c][x].expect("complete table")]).collect()).collect();
    // Word for each coset, from a breadth-first search.
    let n = live.len();
    let mut word: Vec<Option<Vec<usize>>> = vec![None; n];
    word[0] = Some(Vec::new());
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for x in 0..cols {
            let d = act[c][x];
            if word[d].is_none() {
                let mut w = word[c].clone().expect("visited");
                w.push(x);
                word[d] = Some(w);
                queue.push_back(d);
            }
        }
    }
    let table: Vec<Vec<usize>> =
        (0..n).map(|a| (0..n).map(|b| word[b].as_ref().expect("connected").iter().fold(a, |c, &x| act[c][x])).collect()).collect();
    let group = FiniteGroup::from_table(table)?;
    let generators = (0..alphabet).map(|g| act[0][2 * g]).collect();
    Ok(Enumerated { group, generators })
}
