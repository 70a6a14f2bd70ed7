//! Finite permutation groups, subgroups, cosets and the Weyl groups `W(m)`.
//!
//! Points are 0-based. Products compose right to left: `(g*h)(x) = g(h(x))`,
//! so a group acting on points, on pairs of points and on cosets `gH` acts on
//! the left.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest group the engine enumerates.
pub const MAX_ORDER: usize = 50_000;
const TABLE_LIMIT: usize = 2048;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm {
    images: Vec<u16>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree as u16).collect(),
        }
    }

    pub fn from_images(images: &[usize]) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in images {
            if i >= n || seen[i] {
                return Err(Error::Invalid(format!("{images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Perm {
            images: images.iter().map(|&i| i as u16).collect(),
        })
    }

    /// Builds a permutation of `degree` points from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Perm> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cyc in cycles {
            for (k, &a) in cyc.iter().enumerate() {
                if a >= degree || used[a] {
                    return Err(Error::Invalid(format!("bad cycle {cyc:?}")));
                }
                used[a] = true;
                images[a] = cyc[(k + 1) % cyc.len()];
            }
        }
        Perm::from_images(&images)
    }

    /// Transposition of two 0-based points.
    pub fn transposition(degree: usize, a: usize, b: usize) -> Perm {
        let mut p = Perm::identity(degree);
        p.images.swap(a, b);
        p
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize).collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Perm {
            images: other.images.iter().map(|&i| self.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u16; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u16;
        }
        Perm { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = p.compose(self);
            k += 1;
        }
        k
    }

    /// Disjoint cycles of length at least two, 0-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cyc.push(x);
                x = self.apply(x);
            }
            out.push(cyc);
        }
        out
    }

    /// Parses 1-based cycle notation such as `(1 2)(3 4)` or `()`.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Perm> {
        let t = text.trim();
        let mut cycles = Vec::new();
        let mut rest = t;
        while !rest.is_empty() {
            rest = rest.trim_start();
            if rest.is_empty() {
                break;
            }
            if !rest.starts_with('(') {
                return Err(Error::Parse(format!("expected '(' in {text:?}")));
            }
            let close = rest
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in {text:?}")))?;
            let body = &rest[1..close];
            let pts: Vec<usize> = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad point {s:?}")))
                })
                .collect::<Result<_>>()?;
            if pts.iter().any(|&p| p == 0 || p > degree) {
                return Err(Error::Parse(format!("point out of range in {text:?}")));
            }
            if pts.len() > 1 {
                cycles.push(pts.iter().map(|p| p - 1).collect::<Vec<_>>());
            }
            rest = &rest[close + 1..];
        }
        Perm::from_cycles(degree, &cycles)
    }
}

/// 1-based cycle notation.
impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let s: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", s.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A fully enumerated permutation group.
///
/// Element 0 is the identity. Elements are listed in breadth-first order from
/// the generators, which makes every index deterministic.
pub struct PermGroup {
    degree: usize,
    label: String,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    table: Option<Vec<u32>>,
    inv: Vec<usize>,
    gen_index: Vec<usize>,
    /// element i = generators[word[i].1] * elements[word[i].0]
    word: Vec<(usize, usize)>,
    small_gens: Vec<usize>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup({}, order {})", self.label, self.order())
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>, label: &str) -> Result<PermGroup> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::Invalid(format!(
                    "generator {g} has degree {} not {degree}",
                    g.degree()
                )));
            }
        }
        let id = Perm::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id, 0usize);
        let mut word = vec![(0usize, usize::MAX)];
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head].clone();
            for (k, s) in generators.iter().enumerate() {
                let y = s.compose(&x);
                if !index.contains_key(&y) {
                    if elements.len() >= MAX_ORDER {
                        return Err(Error::Invalid(format!(
                            "group {label} exceeds {MAX_ORDER} elements"
                        )));
                    }
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                    word.push((head, k));
                }
            }
            head += 1;
        }
        let n = elements.len();
        let inv: Vec<usize> = elements.iter().map(|e| index[&e.inverse()]).collect();
        let table = if n <= TABLE_LIMIT {
            let mut t = vec![0u32; n * n];
            for a in 0..n {
                for b in 0..n {
                    t[a * n + b] = index[&elements[a].compose(&elements[b])] as u32;
                }
            }
            Some(t)
        } else {
            None
        };
        let gen_index = generators.iter().map(|g| index[g]).collect();
        let mut g = PermGroup {
            degree,
            label: label.to_string(),
            generators,
            elements,
            index,
            table,
            inv,
            gen_index,
            word,
            small_gens: Vec::new(),
        };
        g.small_gens = g.compute_small_generating_set();
        let fact: u128 = (1..=degree as u128).product();
        if fact % (n as u128) != 0 {
            return Err(Error::Internal(format!("order {n} does not divide {degree}!")));
        }
        Ok(g)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// Element indices of the generators.
    pub fn generator_indices(&self) -> &[usize] {
        &self.gen_index
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn try_index(&self, p: &Perm) -> Result<usize> {
        self.index_of(p)
            .ok_or_else(|| Error::NotInGroup(format!("{p} not in {}", self.label)))
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.order() + b] as usize,
            None => self.index[&self.elements[a].compose(&self.elements[b])],
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `a b a^{-1}`.
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.inv[a])
    }

    /// Breadth-first word data: element `i` equals `generators[k] * elements[p]`
    /// where `(p, k) = word_step(i)`; `None` for the identity.
    pub fn word_step(&self, i: usize) -> Option<(usize, usize)> {
        if i == 0 {
            None
        } else {
            Some(self.word[i])
        }
    }

    /// A short generating set (element indices), used to shrink cochain systems.
    pub fn small_generating_set(&self) -> &[usize] {
        &self.small_gens
    }

    fn compute_small_generating_set(&self) -> Vec<usize> {
        let n = self.order();
        if n == 1 {
            return Vec::new();
        }
        let orders: Vec<usize> = self.elements.iter().map(|e| e.order()).collect();
        let mut cand: Vec<usize> = (1..n).collect();
        cand.sort_by(|&a, &b| orders[b].cmp(&orders[a]).then(a.cmp(&b)));
        let mut best: Option<Vec<usize>> = None;
        // a few greedy passes with different starting elements
        for start in cand.iter().take(8) {
            let mut chosen = vec![*start];
            let mut span = self.closure(&chosen);
            for &c in &cand {
                if span.len() == n {
                    break;
                }
                if !span.contains(&c) {
                    chosen.push(c);
                    span = self.closure(&chosen);
                }
            }
            if best.as_ref().is_none_or(|b| chosen.len() < b.len()) {
                best = Some(chosen);
            }
        }
        let mut best = best.unwrap_or_default();
        if best.len() > self.gen_index.len() {
            best = self.gen_index.iter().copied().filter(|&i| i != 0).collect();
        }
        best
    }

    /// Sorted element indices of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let n = self.order();
        let mut mark = vec![false; n];
        mark[0] = true;
        let mut list = vec![0usize];
        let mut head = 0;
        while head < list.len() {
            let x = list[head];
            for &s in gens {
                let y = self.mul(s, x);
                if !mark[y] {
                    mark[y] = true;
                    list.push(y);
                }
            }
            head += 1;
        }
        list.sort_unstable();
        list
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.gen_index;
        g.iter()
            .all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }
}

/// Symmetric group on `n` points generated by `(1 2)` and `(1 2 … n)`.
pub fn symmetric_group(n: usize) -> Result<Arc<PermGroup>> {
    if n == 0 {
        return Err(Error::Invalid("symmetric_group needs n >= 1".into()));
    }
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Perm::transposition(n, 0, 1));
    }
    if n >= 3 {
        let cyc: Vec<usize> = (0..n).collect();
        gens.push(Perm::from_cycles(n, &[cyc])?);
    }
    Ok(Arc::new(PermGroup::new(n, gens, &format!("S{n}"))?))
}

/// Cyclic group of order `n` acting regularly on `n` points.
pub fn cyclic_group(n: usize) -> Result<Arc<PermGroup>> {
    if n == 0 {
        return Err(Error::Invalid("cyclic_group needs n >= 1".into()));
    }
    let gens = if n >= 2 {
        vec![Perm::from_cycles(n, &[(0..n).collect()])?]
    } else {
        vec![]
    };
    Ok(Arc::new(PermGroup::new(n, gens, &format!("C{n}"))?))
}

/// A subgroup together with its own enumeration and the embedding into the parent.
#[derive(Clone)]
pub struct Subgroup {
    name: String,
    parent: Arc<PermGroup>,
    group: Arc<PermGroup>,
    embed: Vec<usize>,
    member: Vec<Option<usize>>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subgroup({} of order {} in {})",
            self.name,
            self.order(),
            self.parent.label()
        )
    }
}

impl Subgroup {
    pub fn new(parent: &Arc<PermGroup>, generators: Vec<Perm>, name: &str) -> Result<Subgroup> {
        for g in &generators {
            if parent.index_of(g).is_none() {
                return Err(Error::NotSubgroup(format!(
                    "generator {g} of {name} is not in {}",
                    parent.label()
                )));
            }
        }
        let gens: Vec<Perm> = generators.into_iter().filter(|g| !g.is_identity()).collect();
        let group = Arc::new(PermGroup::new(parent.degree(), gens, name)?);
        let embed: Vec<usize> = group
            .elements()
            .iter()
            .map(|e| parent.index_of(e).expect("closure stays in parent"))
            .collect();
        let mut member = vec![None; parent.order()];
        for (i, &p) in embed.iter().enumerate() {
            member[p] = Some(i);
        }
        Ok(Subgroup {
            name: name.to_string(),
            parent: parent.clone(),
            group,
            embed,
            member,
        })
    }

    /// Subgroup with a given set of parent element indices (must be closed).
    pub fn from_elements(parent: &Arc<PermGroup>, elems: &[usize], name: &str) -> Result<Subgroup> {
        let mut chosen: Vec<usize> = Vec::new();
        let mut span = parent.closure(&chosen);
        let mut sorted = elems.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut by_order = sorted.clone();
        by_order.sort_by_key(|&e| std::cmp::Reverse(parent.element(e).order()));
        for &e in &by_order {
            if span.binary_search(&e).is_err() {
                chosen.push(e);
                span = parent.closure(&chosen);
            }
        }
        if span != sorted {
            return Err(Error::NotSubgroup(format!("element set for {name} is not closed")));
        }
        let gens = chosen.iter().map(|&i| parent.element(i).clone()).collect();
        Subgroup::new(parent, gens, name)
    }

    /// The whole group as a subgroup of itself.
    pub fn whole(parent: &Arc<PermGroup>) -> Subgroup {
        Subgroup::new(parent, parent.generators().to_vec(), parent.label())
            .expect("generators lie in the group")
    }

    pub fn trivial(parent: &Arc<PermGroup>, name: &str) -> Subgroup {
        Subgroup::new(parent, vec![], name).expect("trivial subgroup")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn parent(&self) -> &Arc<PermGroup> {
        &self.parent
    }

    /// The subgroup as a group in its own right.
    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    /// Parent index of the subgroup element with local index `i`.
    pub fn embed(&self, i: usize) -> usize {
        self.embed[i]
    }

    pub fn embedding(&self) -> &[usize] {
        &self.embed
    }

    /// Local index of a parent element, if it lies in the subgroup.
    pub fn local(&self, parent_idx: usize) -> Option<usize> {
        self.member[parent_idx]
    }

    pub fn contains(&self, parent_idx: usize) -> bool {
        self.member[parent_idx].is_some()
    }

    pub fn contains_perm(&self, p: &Perm) -> bool {
        self.parent.index_of(p).is_some_and(|i| self.contains(i))
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        same_group(&self.parent, &other.parent) && self.embed.iter().all(|&e| other.contains(e))
    }

    pub fn is_normal(&self) -> bool {
        let p = &self.parent;
        p.generator_indices()
            .iter()
            .all(|&g| self.embed.iter().all(|&h| self.contains(p.conj(g, h))))
    }

    pub fn with_name(mut self, name: &str) -> Subgroup {
        self.name = name.to_string();
        self
    }
}

/// Same underlying group (pointer or identical enumeration data).
pub fn same_group(a: &Arc<PermGroup>, b: &Arc<PermGroup>) -> bool {
    Arc::ptr_eq(a, b)
        || (a.degree() == b.degree()
            && a.order() == b.order()
            && a.generators() == b.generators()
            && a.elements() == b.elements())
}

/// Left cosets `gH` with a fixed transversal whose first element is the identity.
#[derive(Clone, Debug)]
pub struct Cosets {
    /// parent element indices of the representatives
    pub reps: Vec<usize>,
    /// coset number of each parent element
    pub coset_of: Vec<usize>,
}

impl Cosets {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Coset number of `g · (rep of coset c)`.
    pub fn act(&self, group: &PermGroup, g: usize, c: usize) -> usize {
        self.coset_of[group.mul(g, self.reps[c])]
    }
}

/// Left coset transversal of `h` in its parent.
pub fn cosets(h: &Subgroup) -> Cosets {
    let g = h.parent();
    let n = g.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for &e in h.embedding() {
            coset_of[g.mul(x, e)] = c;
        }
    }
    Cosets { reps, coset_of }
}

/// Representatives of the double cosets `H x K` (identity first).
pub fn double_cosets(h: &Subgroup, k: &Subgroup) -> Result<Vec<usize>> {
    if !same_group(h.parent(), k.parent()) {
        return Err(Error::GroupMismatch("double cosets need a common parent".into()));
    }
    let g = h.parent();
    let n = g.order();
    let mut seen = vec![false; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        reps.push(x);
        for &a in h.embedding() {
            let ax = g.mul(a, x);
            for &b in k.embedding() {
                seen[g.mul(ax, b)] = true;
            }
        }
    }
    Ok(reps)
}

/// `g H g^{-1}`.
pub fn conjugate_subgroup(h: &Subgroup, g: &Perm) -> Result<Subgroup> {
    let parent = h.parent();
    let gi = parent.try_index(g)?;
    let gens = h
        .group()
        .generators()
        .iter()
        .map(|x| g.compose(x).compose(&g.inverse()))
        .collect();
    let _ = gi;
    Subgroup::new(parent, gens, &format!("{}^{}", h.name(), g))
}

pub fn intersection(a: &Subgroup, b: &Subgroup, name: &str) -> Result<Subgroup> {
    if !same_group(a.parent(), b.parent()) {
        return Err(Error::GroupMismatch("intersection needs a common parent".into()));
    }
    let elems: Vec<usize> = a.embedding().iter().copied().filter(|&e| b.contains(e)).collect();
    Subgroup::from_elements(a.parent(), &elems, name)
}

/// A homomorphism between enumerated groups, stored on all elements.
#[derive(Clone)]
pub struct GroupHom {
    pub source: Arc<PermGroup>,
    pub target: Arc<PermGroup>,
    images: Vec<usize>,
}

impl GroupHom {
    /// Extends generator images along breadth-first words and verifies the
    /// homomorphism property on all pairs (generator, element).
    pub fn from_generator_images(
        source: &Arc<PermGroup>,
        target: &Arc<PermGroup>,
        gen_images: &[Perm],
    ) -> Result<GroupHom> {
        if gen_images.len() != source.generators().len() {
            return Err(Error::Invalid("one image per generator required".into()));
        }
        let gi: Vec<usize> = gen_images
            .iter()
            .map(|p| target.try_index(p))
            .collect::<Result<_>>()?;
        let n = source.order();
        let mut images = vec![0usize; n];
        for i in 1..n {
            let (p, k) = source.word_step(i).expect("non-identity");
            images[i] = target.mul(gi[k], images[p]);
        }
        for (k, &s) in source.generator_indices().iter().enumerate() {
            for x in 0..n {
                if images[source.mul(s, x)] != target.mul(gi[k], images[x]) {
                    return Err(Error::NotHomomorphism(format!(
                        "generator images do not define a homomorphism at ({}, {})",
                        source.element(s),
                        source.element(x)
                    )));
                }
            }
        }
        Ok(GroupHom {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        for &i in &self.images {
            hit[i] = true;
        }
        hit.into_iter().all(|b| b)
    }

    /// Kernel as element indices of the source.
    pub fn kernel(&self) -> Vec<usize> {
        (0..self.source.order()).filter(|&i| self.images[i] == 0).collect()
    }
}

/// The Weyl group `W(m) = (Z/2)^m ⋊ S_m ⊂ S_{2m}` with its named subgroups.
///
/// Blocks are `{2k, 2k+1}`; `τ_k` swaps the points of block `k`.
#[derive(Clone)]
pub struct WeylGroup {
    pub m: usize,
    pub w: Arc<PermGroup>,
    pub tau: Vec<Perm>,
    /// the normal subgroup generated by all `τ_k`
    pub a: Subgroup,
    /// block permutations
    pub sm: Subgroup,
    /// stabilizer of the block `{1,2}`
    pub h: Subgroup,
    /// stabilizer of the point 1
    pub h1: Subgroup,
    /// stabilizer of the points 1 and 3 (`m >= 2`)
    pub h2: Option<Subgroup>,
    /// the block swap with `g(1) = 3`, `g(2) = 4` (`m >= 2`)
    pub g: Option<Perm>,
}

impl fmt::Debug for WeylGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylGroup(m = {}, order {})", self.m, self.w.order())
    }
}

/// Block permutation of `W(m)` induced by a permutation of the blocks.
pub fn block_perm(m: usize, blocks: &Perm) -> Perm {
    let mut images = vec![0usize; 2 * m];
    for k in 0..m {
        let t = blocks.apply(k);
        images[2 * k] = 2 * t;
        images[2 * k + 1] = 2 * t + 1;
    }
    Perm::from_images(&images).expect("block permutation")
}

fn sym_gens_on(m: usize, pts: &[usize]) -> Vec<Perm> {
    // generators of the symmetric group on the blocks listed in pts
    let mut out = Vec::new();
    if pts.len() >= 2 {
        out.push(Perm::transposition(m, pts[0], pts[1]));
    }
    if pts.len() >= 3 {
        out.push(Perm::from_cycles(m, &[pts.to_vec()]).expect("cycle"));
    }
    out
}

pub fn weyl_group(m: usize) -> Result<WeylGroup> {
    if m == 0 {
        return Err(Error::Invalid("weyl_group needs m >= 1".into()));
    }
    if m > 4 {
        return Err(Error::Invalid("weyl_group supports m <= 4".into()));
    }
    let n = 2 * m;
    let tau: Vec<Perm> = (0..m).map(|k| Perm::transposition(n, 2 * k, 2 * k + 1)).collect();
    let all_blocks: Vec<usize> = (0..m).collect();
    let block_gens: Vec<Perm> = sym_gens_on(m, &all_blocks)
        .iter()
        .map(|b| block_perm(m, b))
        .collect();
    let mut gens = vec![tau[0].clone()];
    gens.extend(block_gens.iter().cloned());
    let w = Arc::new(PermGroup::new(n, gens, &format!("W{m}"))?);
    let a = Subgroup::new(&w, tau.clone(), "A")?;
    let sm = Subgroup::new(&w, block_gens, "S_m")?;
    let rest: Vec<usize> = (1..m).collect();
    let mut h_gens = tau.clone();
    h_gens.extend(sym_gens_on(m, &rest).iter().map(|b| block_perm(m, b)));
    let h = Subgroup::new(&w, h_gens, "H")?;
    let mut h1_gens: Vec<Perm> = tau[1..].to_vec();
    h1_gens.extend(sym_gens_on(m, &rest).iter().map(|b| block_perm(m, b)));
    let h1 = Subgroup::new(&w, h1_gens, "H'")?;
    let (h2, g) = if m >= 2 {
        let rest2: Vec<usize> = (2..m).collect();
        let mut h2_gens: Vec<Perm> = tau[2..].to_vec();
        h2_gens.extend(sym_gens_on(m, &rest2).iter().map(|b| block_perm(m, b)));
        let h2 = Subgroup::new(&w, h2_gens, "H''")?;
        let g = block_perm(m, &Perm::transposition(m, 0, 1));
        (Some(h2), Some(g))
    } else {
        (None, None)
    };
    Ok(WeylGroup {
        m,
        w,
        tau,
        a,
        sm,
        h,
        h1,
        h2,
        g,
    })
}

impl WeylGroup {
    pub fn h2(&self) -> Result<&Subgroup> {
        self.h2
            .as_ref()
            .ok_or_else(|| Error::Precondition("H'' needs m >= 2".into()))
    }

    pub fn g(&self) -> Result<&Perm> {
        self.g
            .as_ref()
            .ok_or_else(|| Error::Precondition("g needs m >= 2".into()))
    }

    /// Block swap `σ` exchanging blocks 1 and 2.
    pub fn sigma(&self) -> Result<Perm> {
        self.g().cloned()
    }

    /// `B = ⟨σ₁σ₂, σ⟩` for `m = 2`.
    pub fn b(&self) -> Result<Subgroup> {
        if self.m != 2 {
            return Err(Error::Precondition("B is defined for m = 2".into()));
        }
        let a = self.tau[0].compose(&self.tau[1]);
        Subgroup::new(&self.w, vec![a, self.sigma()?], "B")
    }

    /// `C = ⟨σσ₁⟩` for `m = 2`.
    pub fn c(&self) -> Result<Subgroup> {
        if self.m != 2 {
            return Err(Error::Precondition("C is defined for m = 2".into()));
        }
        Subgroup::new(&self.w, vec![self.sigma()?.compose(&self.tau[0])], "C")
    }

    /// Projection `p_1: H → Z/2` recording whether block 1 is flipped.
    pub fn p1(&self, z2: &Arc<PermGroup>) -> Result<GroupHom> {
        block_flip_hom(&self.h, 0, z2)
    }
}

/// `Z/2` as the symmetric group on two points.
pub fn z2() -> Arc<PermGroup> {
    symmetric_group(2).expect("S2")
}

/// For a subgroup `k` stabilizing block `block`, the map recording whether
/// an element swaps the two points of that block.
pub fn block_flip_hom(k: &Subgroup, block: usize, z2: &Arc<PermGroup>) -> Result<GroupHom> {
    let grp = k.group();
    let swap = Perm::transposition(2, 0, 1);
    let id = Perm::identity(2);
    let mut imgs = Vec::new();
    for g in grp.generators() {
        let a = g.apply(2 * block);
        if a != 2 * block && a != 2 * block + 1 {
            return Err(Error::Precondition(format!(
                "{g} does not stabilize block {}",
                block + 1
            )));
        }
        imgs.push(if a == 2 * block { id.clone() } else { swap.clone() });
    }
    GroupHom::from_generator_images(grp, z2, &imgs)
}

/// Parses the group description language: `group NAME = <(1 2), (1 2 3)>`.
/// The degree is the largest point mentioned unless `degree N` follows the name.
pub fn parse_group_dsl(text: &str) -> Result<Vec<(String, Arc<PermGroup>)>> {
    let mut out = Vec::new();
    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let rest = line
            .strip_prefix("group")
            .ok_or_else(|| Error::Parse(format!("expected 'group' in {line:?}")))?;
        let (name, body) = rest
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected '=' in {line:?}")))?;
        let name = name.trim().to_string();
        if name.is_empty() {
            return Err(Error::Parse(format!("missing name in {line:?}")));
        }
        out.push((name.clone(), parse_generator_list(body, &name)?));
    }
    Ok(out)
}

/// Parses `<(1 2), (3 4)>` into a group.
pub fn parse_generator_list(body: &str, name: &str) -> Result<Arc<PermGroup>> {
    let body = body.trim();
    let inner = body
        .strip_prefix('<')
        .and_then(|b| b.strip_suffix('>'))
        .ok_or_else(|| Error::Parse(format!("expected <...> in {body:?}")))?;
    let mut degree = 1;
    for tok in inner.split(|c: char| !c.is_ascii_digit()) {
        if let Ok(v) = tok.parse::<usize>() {
            degree = degree.max(v);
        }
    }
    let mut gens = Vec::new();
    for part in split_top_level(inner) {
        let p = part.trim();
        if p.is_empty() {
            continue;
        }
        gens.push(Perm::parse_cycles(p, degree)?);
    }
    Ok(Arc::new(PermGroup::new(degree, gens, name)?))
}

fn split_top_level(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch)
            }
            ')' => {
                depth -= 1;
                cur.push(ch)
            }
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
            }
            _ => cur.push(ch),
        }
    }
    out.push(cur);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn symmetric_orders() {
        for n in 1..=6 {
            assert_eq!(symmetric_group(n).unwrap().order(), factorial(n));
        }
        assert!(symmetric_group(0).is_err());
    }

    #[test]
    fn weyl_orders_and_subgroups() {
        for m in 1..=4 {
            let w = weyl_group(m).unwrap();
            assert_eq!(w.w.order(), (1 << m) * factorial(m));
            assert_eq!(w.a.order(), 1 << m);
            assert!(w.a.is_normal());
            assert_eq!(w.sm.order(), factorial(m));
            assert_eq!(w.h.index(), m);
            assert_eq!(w.h1.index(), 2 * m);
        }
        let w2 = weyl_group(2).unwrap();
        assert_eq!(w2.h2().unwrap().order(), 1);
        let w3 = weyl_group(3).unwrap();
        assert_eq!(w3.h2().unwrap().order(), 2);
        assert_eq!(w3.h.order(), 16);
    }

    #[test]
    fn weyl_two_is_dihedral() {
        let w = weyl_group(2).unwrap();
        assert!(!w.w.is_abelian());
        let orders: Vec<usize> = w.w.elements().iter().map(|e| e.order()).collect();
        assert_eq!(orders.iter().filter(|&&o| o == 4).count(), 2);
        assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 5);
    }

    #[test]
    fn double_cosets_of_h() {
        for m in 2..=3 {
            let w = weyl_group(m).unwrap();
            let reps = double_cosets(&w.h, &w.h).unwrap();
            assert_eq!(reps.len(), 2);
            let g = w.g().unwrap();
            let gi = w.w.index_of(g).unwrap();
            assert!(!w.h.contains(gi));
        }
    }

    #[test]
    fn conjugate_examples() {
        let s3 = symmetric_group(3).unwrap();
        let h = Subgroup::new(&s3, vec![Perm::transposition(3, 0, 1)], "h").unwrap();
        let c = conjugate_subgroup(&h, &Perm::transposition(3, 1, 2)).unwrap();
        assert!(c.contains_perm(&Perm::transposition(3, 0, 2)));
        assert_eq!(c.order(), 2);
        let w = weyl_group(2).unwrap();
        let gh = conjugate_subgroup(&w.h, w.g().unwrap()).unwrap();
        assert_eq!(gh.order(), 4);
        let inter = intersection(&w.h, &gh, "K").unwrap();
        assert!(w.h2().unwrap().is_subgroup_of(&inter));
    }

    #[test]
    fn cosets_partition() {
        let w = weyl_group(3).unwrap();
        for h in [&w.h, &w.h1, w.h2().unwrap(), &w.a] {
            let c = cosets(h);
            assert_eq!(c.len(), h.index());
            assert_eq!(c.reps[0], 0);
            let mut counts = vec![0; c.len()];
            for &x in &c.coset_of {
                counts[x] += 1;
            }
            assert!(counts.iter().all(|&k| k == h.order()));
        }
    }

    #[test]
    fn parse_and_print() {
        let gs = parse_group_dsl("group W2 = <(1 2), (3 4), (1 3)(2 4)>").unwrap();
        assert_eq!(gs[0].1.order(), 8);
        let p = Perm::parse_cycles("(1 3)(2 4)", 4).unwrap();
        assert_eq!(p.to_string(), "(1 3)(2 4)");
        assert_eq!(Perm::identity(3).to_string(), "()");
    }

    #[test]
    fn weyl_quotient_by_a() {
        let w = weyl_group(3).unwrap();
        let s3 = symmetric_group(3).unwrap();
        // action on blocks
        let imgs: Vec<Perm> = w
            .w
            .generators()
            .iter()
            .map(|g| {
                let b: Vec<usize> = (0..3).map(|k| g.apply(2 * k) / 2).collect();
                Perm::from_images(&b).unwrap()
            })
            .collect();
        let f = GroupHom::from_generator_images(&w.w, &s3, &imgs).unwrap();
        assert!(f.is_surjective());
        let mut k = f.kernel();
        k.sort();
        let mut a = w.a.embedding().to_vec();
        a.sort();
        assert_eq!(k, a);
    }

    #[test]
    fn small_generating_sets_generate() {
        for m in 1..=3 {
            let w = weyl_group(m).unwrap();
            for h in [&w.h, &w.h1, &w.a] {
                let g = h.group();
                assert_eq!(g.closure(g.small_generating_set()).len(), g.order());
            }
        }
    }
}
