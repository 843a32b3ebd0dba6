//! Trees with beads on the meridian module, their canonical forms as
//! `g`-tuples of Lie elements, the tree bracket, and the diagrammatic
//! Johnson-type values built from them.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::envelope::{class_of, Expansion};
use crate::error::{internal, parse_err, precondition, Result};
use crate::foxcalc::magnus;
use crate::groupring::{Laurent, RingMatrix, Q, Z};
use crate::intersect::{pairing_word_letter, psi_letters, theta_word_letter, PeelOrder};
use crate::johnson::{bracket_trivial_lift, from_cocycle, tau, SpecialDerivation};
use crate::liefree::{act_f, fmt_f, format_lie, standard_factorization, AElt, Letter, Lie};
use crate::words::{catalog, Alphabet, Endo, Word};

#[derive(Clone, PartialEq, Eq, Debug)]
enum Vert {
    Leaf(Letter),
    /// Incident edges in cyclic order.
    Node([usize; 3]),
    Gone,
}

/// An edge with the product of its beads read from `tail` to `head`.
#[derive(Clone, PartialEq, Eq, Debug)]
struct Edge {
    tail: usize,
    head: usize,
    hol: Word,
}

/// A uni-trivalent tree with leaves colored by letters `f . a_i` and
/// group-element beads on edges, times a rational coefficient.
///
/// At a node entered along an edge `e`, with the other edges `n1, n2`
/// following `e` in the cyclic order, the word read outward is `[n1, n2]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tree {
    pub coeff: Q,
    verts: Vec<Vert>,
    edges: Vec<Edge>,
}

/// Half of a tree as written in the text form: a leaf, a node with its
/// two outgoing subtrees, or a bead pointing into a subtree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Half {
    Leaf(Letter),
    Node(Box<Half>, Box<Half>),
    Bead(Word, Box<Half>),
}

impl Half {
    pub fn leaf(l: Letter) -> Half {
        Half::Leaf(l)
    }

    pub fn node(a: Half, b: Half) -> Half {
        Half::Node(Box::new(a), Box::new(b))
    }

    pub fn bead(x: Word, s: Half) -> Half {
        Half::Bead(x, Box::new(s))
    }

    /// The standard bracketing of a Lyndon word.
    pub fn of_lyndon(w: &[Letter]) -> Half {
        if w.len() == 1 {
            return Half::Leaf(w[0].clone());
        }
        let (u, v) = standard_factorization(w);
        Half::node(Half::of_lyndon(u), Half::of_lyndon(v))
    }

    fn format(&self, out: &mut String) {
        match self {
            Half::Leaf(l) => out.push_str(&format!("(leaf ({}) {})", fmt_word(&l.f), l.i)),
            Half::Node(a, b) => {
                out.push_str("(node ");
                a.format(out);
                out.push(' ');
                b.format(out);
                out.push(')');
            }
            Half::Bead(x, s) => {
                out.push_str(&format!("(bead ({}) ", fmt_word(x)));
                s.format(out);
                out.push(')');
            }
        }
    }
}

fn fmt_word(w: &Word) -> String {
    if w.is_one() {
        String::new()
    } else {
        fmt_f(w)
    }
}

impl Tree {
    /// Joins two halves by an edge.
    pub fn join(coeff: Q, left: &Half, right: &Half) -> Tree {
        let mut t = Tree {
            coeff,
            verts: Vec::new(),
            edges: Vec::new(),
        };
        let (vl, hl) = t.build(left);
        let (vr, hr) = t.build(right);
        let e = t.edges.len();
        t.edges.push(Edge {
            tail: vl,
            head: vr,
            hol: hl.inv().mul(&hr),
        });
        t.attach(vl, e);
        t.attach(vr, e);
        t
    }

    /// Two leaves joined by an edge carrying `bead` from `a` to `b`.
    pub fn segment(coeff: Q, a: Letter, bead: Word, b: Letter) -> Tree {
        Tree::join(coeff, &Half::Leaf(a), &Half::bead(bead, Half::Leaf(b)))
    }

    /// Builds a half and returns its top vertex with the bead product met
    /// on the way down to it.
    fn build(&mut self, h: &Half) -> (usize, Word) {
        match h {
            Half::Leaf(l) => {
                self.verts.push(Vert::Leaf(l.clone()));
                (self.verts.len() - 1, Word::one())
            }
            Half::Bead(x, s) => {
                let (v, hol) = self.build(s);
                (v, x.mul(&hol))
            }
            Half::Node(a, b) => {
                let n = self.verts.len();
                self.verts.push(Vert::Node([usize::MAX; 3]));
                let mut slots = [usize::MAX; 3];
                for (k, s) in [a, b].into_iter().enumerate() {
                    let (v, hol) = self.build(s);
                    let e = self.edges.len();
                    self.edges.push(Edge {
                        tail: n,
                        head: v,
                        hol,
                    });
                    self.attach(v, e);
                    slots[k + 1] = e;
                }
                if let Vert::Node(arr) = &mut self.verts[n] {
                    arr[1] = slots[1];
                    arr[2] = slots[2];
                }
                (n, Word::one())
            }
        }
    }

    /// Records `e` as the parent edge of a freshly built node.
    fn attach(&mut self, v: usize, e: usize) {
        if let Vert::Node(arr) = &mut self.verts[v] {
            if arr[0] == usize::MAX {
                arr[0] = e;
            }
        }
    }

    pub fn leaves(&self) -> Vec<(usize, &Letter)> {
        self.verts
            .iter()
            .enumerate()
            .filter_map(|(k, v)| match v {
                Vert::Leaf(l) => Some((k, l)),
                _ => None,
            })
            .collect()
    }

    pub fn degree(&self) -> usize {
        self.leaves().len() - 1
    }

    fn leaf_edge(&self, v: usize) -> usize {
        self.edges
            .iter()
            .position(|e| e.tail == v || e.head == v)
            .expect("every leaf has an edge")
    }

    fn other(&self, e: usize, u: usize) -> usize {
        let ed = &self.edges[e];
        if ed.tail == u {
            ed.head
        } else {
            ed.tail
        }
    }

    fn rotate(arr: &[usize; 3], e: usize) -> (usize, usize) {
        let p = arr
            .iter()
            .position(|&x| x == e)
            .expect("edge incident to node");
        (arr[(p + 1) % 3], arr[(p + 2) % 3])
    }

    /// Word of the part of the tree beyond `e`, read from its endpoint `from`.
    fn half_word(&self, from: usize, e: usize) -> Lie {
        let ed = &self.edges[e];
        let (to, act) = if ed.tail == from {
            (ed.head, ed.hol.clone())
        } else {
            (ed.tail, ed.hol.inv())
        };
        act_f(&act, &self.vertex_word(to, e))
    }

    /// Word of the subtree at `v` when entered along `via`.
    fn vertex_word(&self, v: usize, via: usize) -> Lie {
        match &self.verts[v] {
            Vert::Leaf(l) => Lie::letter(l.clone()),
            Vert::Node(arr) => {
                let (n1, n2) = Tree::rotate(arr, via);
                self.half_word(v, n1).bracket(&self.half_word(v, n2))
            }
            Vert::Gone => unreachable!("removed vertex reached"),
        }
    }

    fn half_of(&self, from: usize, e: usize) -> Half {
        let ed = &self.edges[e];
        let (to, x) = if ed.tail == from {
            (ed.head, ed.hol.clone())
        } else {
            (ed.tail, ed.hol.inv())
        };
        let inner = match &self.verts[to] {
            Vert::Leaf(l) => Half::Leaf(l.clone()),
            Vert::Node(arr) => {
                let (n1, n2) = Tree::rotate(arr, e);
                Half::node(self.half_of(to, n1), self.half_of(to, n2))
            }
            Vert::Gone => unreachable!("removed vertex reached"),
        };
        if x.is_one() {
            inner
        } else {
            Half::bead(x, inner)
        }
    }

    /// The text form, cut at the edge of the first leaf.
    pub fn format(&self) -> String {
        let (v, l) = self.leaves()[0];
        let e = self.leaf_edge(v);
        let mut s = format!("(tree {} (node ", self.coeff);
        Half::Leaf(l.clone()).format(&mut s);
        s.push(' ');
        self.half_of(v, e).format(&mut s);
        s.push_str("))");
        s
    }

    /// Moves beads on leaf edges into the leaf colors.
    fn absorb_leaf_beads(&mut self) {
        for e in 0..self.edges.len() {
            let Edge { tail, head, hol } = self.edges[e].clone();
            if hol.is_one() {
                continue;
            }
            if let Vert::Leaf(l) = &self.verts[head] {
                self.verts[head] = Vert::Leaf(l.translate(&hol));
            } else if let Vert::Leaf(l) = &self.verts[tail] {
                self.verts[tail] = Vert::Leaf(l.translate(&hol.inv()));
            } else {
                continue;
            }
            self.edges[e].hol = Word::one();
        }
    }

    fn merged(d: &Tree, e: &Tree) -> (Tree, usize, usize) {
        let (ov, oe) = (d.verts.len(), d.edges.len());
        let mut t = d.clone();
        t.coeff = &d.coeff * &e.coeff;
        for v in &e.verts {
            t.verts.push(match v {
                Vert::Node(arr) => Vert::Node(arr.map(|k| k + oe)),
                other => other.clone(),
            });
        }
        for ed in &e.edges {
            t.edges.push(Edge {
                tail: ed.tail + ov,
                head: ed.head + ov,
                hol: ed.hol.clone(),
            });
        }
        (t, ov, oe)
    }

    fn compact(mut self) -> Tree {
        let mut map = vec![usize::MAX; self.verts.len()];
        let mut verts = Vec::new();
        for (k, v) in self.verts.drain(..).enumerate() {
            if v != Vert::Gone {
                map[k] = verts.len();
                verts.push(v);
            }
        }
        for ed in &mut self.edges {
            ed.tail = map[ed.tail];
            ed.head = map[ed.head];
        }
        self.verts = verts;
        self
    }

    fn replace_end(&mut self, e: usize, old: usize, new: usize) {
        let ed = &mut self.edges[e];
        if ed.tail == old {
            ed.tail = new;
        } else {
            ed.head = new;
        }
    }

    /// All branchings of `d` and `e` along a pair of leaves.
    fn branchings(d: &Tree, e: &Tree) -> Vec<Tree> {
        let mut out = Vec::new();
        for (v, lv) in d.leaves() {
            for (w, lw) in e.leaves() {
                let psi = psi_letters(lv, lw, PeelOrder::LeftFirst);
                for ((h, lam), c) in psi.terms() {
                    let (mut t, ov, oe) = Tree::merged(d, e);
                    let (ev, ew, w2) = (d.leaf_edge(v), e.leaf_edge(w) + oe, w + ov);
                    let (n, nl) = (t.verts.len(), t.verts.len() + 1);
                    let p = t.other(ev, v);
                    t.edges[ev] = Edge {
                        tail: p,
                        head: n,
                        hol: h.clone(),
                    };
                    t.replace_end(ew, w2, n);
                    let el = t.edges.len();
                    t.edges.push(Edge {
                        tail: n,
                        head: nl,
                        hol: Word::one(),
                    });
                    t.verts.push(Vert::Node([el, ev, ew]));
                    t.verts.push(Vert::Leaf(lam.clone()));
                    t.verts[v] = Vert::Gone;
                    t.verts[w2] = Vert::Gone;
                    t.coeff *= c;
                    out.push(t.compact());
                }
            }
        }
        out
    }

    /// All graftings of `e` onto the beads of `d`.
    fn graftings(d: &Tree, e: &Tree) -> Vec<Tree> {
        let mut out = Vec::new();
        for (b, eb) in d.edges.iter().enumerate() {
            if eb.hol.is_one() {
                continue;
            }
            for (w, lw) in e.leaves() {
                for (left, right, n) in theta_word_letter(&eb.hol, lw) {
                    let (mut t, ov, oe) = Tree::merged(d, e);
                    let (u, v) = (eb.tail, eb.head);
                    let (ew, w2) = (e.leaf_edge(w) + oe, w + ov);
                    let node = t.verts.len();
                    let b2 = t.edges.len();
                    t.edges[b] = Edge {
                        tail: u,
                        head: node,
                        hol: right,
                    };
                    t.edges.push(Edge {
                        tail: node,
                        head: v,
                        hol: left,
                    });
                    if let Vert::Node(arr) = &mut t.verts[v] {
                        for x in arr.iter_mut().filter(|x| **x == b) {
                            *x = b2;
                        }
                    }
                    t.replace_end(ew, w2, node);
                    t.verts.push(Vert::Node([b, ew, b2]));
                    t.verts[w2] = Vert::Gone;
                    t.coeff *= n;
                    out.push(t.compact());
                }
            }
        }
        out
    }

    /// The bracket of two trees as a combination of trees.
    pub fn bracket(d: &Tree, e: &Tree) -> Vec<Tree> {
        let mut d = d.clone();
        let mut e = e.clone();
        d.absorb_leaf_beads();
        e.absorb_leaf_beads();
        let mut out = Tree::branchings(&d, &e);
        for mut t in Tree::graftings(&d, &e) {
            t.coeff = -t.coeff;
            out.push(t);
        }
        out.extend(Tree::graftings(&e, &d));
        out
    }

    /// The derivation of `Lie(A)` defined by the tree, on a letter.
    pub fn apply_letter(&self, a: &Letter) -> Lie {
        let mut out = Lie::zero();
        for (v, col) in self.leaves() {
            let word = self.half_word(v, self.leaf_edge(v));
            for ((p, lam), c) in psi_letters(col, a, PeelOrder::LeftFirst).terms() {
                let t = act_f(&p.inv(), &word).bracket(&Lie::letter(lam.clone()));
                out.add_scaled(&t, &-c.clone());
            }
        }
        for (k, ed) in self.edges.iter().enumerate() {
            if ed.hol.is_one() {
                continue;
            }
            let wt = self.vertex_word(ed.tail, k);
            let wh = act_f(&ed.hol, &self.vertex_word(ed.head, k));
            let br = wt.bracket(&wh);
            for (y, m) in pairing_word_letter(&ed.hol, a).terms() {
                out.add_scaled(&act_f(&y.inv(), &br), m);
            }
        }
        out.scale(&self.coeff)
    }
}

/// Parses one or more `(tree ...)` forms.
pub fn parse_trees(g: usize, s: &str) -> Result<Vec<Tree>> {
    let mut p = SexpParser {
        cs: s.chars().collect(),
        pos: 0,
        g,
    };
    let mut out = Vec::new();
    loop {
        p.skip();
        if p.pos >= p.cs.len() {
            break;
        }
        p.open("tree")?;
        let coeff = p.atom()?;
        let coeff: Q = coeff
            .parse()
            .or_else(|_| parse_err(format!("bad coefficient `{coeff}` at {}", p.pos)))?;
        p.open("node")?;
        let l = p.half()?;
        let r = p.half()?;
        p.close()?;
        p.close()?;
        out.push(Tree::join(coeff, &l, &r));
    }
    if out.is_empty() {
        return parse_err("no tree given");
    }
    Ok(out)
}

struct SexpParser {
    cs: Vec<char>,
    pos: usize,
    g: usize,
}

impl SexpParser {
    fn skip(&mut self) {
        while self.pos < self.cs.len() && self.cs[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip();
        if self.cs.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            parse_err(format!("expected `{c}` at {}", self.pos))
        }
    }

    fn atom(&mut self) -> Result<String> {
        self.skip();
        let start = self.pos;
        while self.pos < self.cs.len()
            && !self.cs[self.pos].is_whitespace()
            && !"()".contains(self.cs[self.pos])
        {
            self.pos += 1;
        }
        if start == self.pos {
            return parse_err(format!("expected an atom at {start}"));
        }
        Ok(self.cs[start..self.pos].iter().collect())
    }

    fn open(&mut self, kw: &str) -> Result<()> {
        self.expect('(')?;
        let at = self.pos;
        let a = self.atom()?;
        if a != kw {
            return parse_err(format!("expected `{kw}` at {at}, found `{a}`"));
        }
        Ok(())
    }

    fn close(&mut self) -> Result<()> {
        self.expect(')')
    }

    fn word(&mut self) -> Result<Word> {
        self.expect('(')?;
        let start = self.pos;
        while self.pos < self.cs.len() && self.cs[self.pos] != ')' {
            self.pos += 1;
        }
        let text: String = self.cs[start..self.pos].iter().collect();
        self.close()?;
        Alphabet::Free(self.g).parse(&text)
    }

    fn half(&mut self) -> Result<Half> {
        self.expect('(')?;
        let at = self.pos;
        let kw = self.atom()?;
        let h = match kw.as_str() {
            "leaf" => {
                let f = self.word()?;
                let i = self.atom()?;
                let i: usize = i
                    .parse()
                    .or_else(|_| parse_err(format!("bad leaf index `{i}`")))?;
                if i == 0 || i > self.g {
                    return parse_err(format!("leaf index {i} out of range at {at}"));
                }
                Half::Leaf(Letter::new(f, i))
            }
            "node" => {
                let a = self.half()?;
                let b = self.half()?;
                Half::node(a, b)
            }
            "bead" => {
                let x = self.word()?;
                let s = self.half()?;
                Half::bead(x, s)
            }
            _ => return parse_err(format!("unknown form `{kw}` at {at}")),
        };
        self.close()?;
        Ok(h)
    }
}

/// Canonical form of an element of the tree space: slot `i` holds the
/// Lie element `w_i` of `sum_i a_i (x) w_i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiagElt {
    pub g: usize,
    pub slots: Vec<Lie>,
}

impl DiagElt {
    pub fn zero(g: usize) -> DiagElt {
        DiagElt {
            g,
            slots: vec![Lie::zero(); g],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.slots.iter().all(|s| s.is_zero())
    }

    pub fn add(&self, o: &DiagElt) -> DiagElt {
        DiagElt {
            g: self.g,
            slots: self
                .slots
                .iter()
                .zip(&o.slots)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, o: &DiagElt) -> DiagElt {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn scale(&self, s: &Q) -> DiagElt {
        DiagElt {
            g: self.g,
            slots: self.slots.iter().map(|a| a.scale(s)).collect(),
        }
    }

    /// Adds `c * (l (x) w)`.
    fn add_leaf(&mut self, l: &Letter, w: &Lie, c: &Q) {
        self.slots[l.i - 1].add_scaled(&act_f(&l.f.inv(), w), c);
    }

    /// Whether `sum [a_i, slot_i]` vanishes in the coinvariants.
    pub fn beta_check(&self) -> bool {
        bracket_trivial_lift(&self.derivation_data()).is_ok()
    }

    fn derivation_data(&self) -> SpecialDerivation {
        SpecialDerivation {
            g: self.g,
            c: self.slots.iter().map(|s| s.neg()).collect(),
            h: vec![Lie::zero(); self.g],
        }
    }

    /// The special derivation with cocycle `c(x_i) = -slot_i`.
    pub fn to_derivation(&self) -> Result<SpecialDerivation> {
        from_cocycle(self.g, self.slots.iter().map(|s| s.neg()).collect())
    }

    pub fn from_derivation(d: &SpecialDerivation) -> DiagElt {
        DiagElt {
            g: d.g,
            slots: d.c.iter().map(|s| s.neg()).collect(),
        }
    }

    pub fn homogeneous(&self, k: usize) -> DiagElt {
        DiagElt {
            g: self.g,
            slots: self.slots.iter().map(|s| s.homogeneous(k)).collect(),
        }
    }

    /// Coordinates keyed by slot and Lyndon word.
    pub fn coordinates(&self) -> BTreeMap<(usize, Vec<Letter>), Q> {
        let mut out = BTreeMap::new();
        for (i, s) in self.slots.iter().enumerate() {
            for (w, c) in s.terms() {
                out.insert((i + 1, w.clone()), c.clone());
            }
        }
        out
    }
}

impl fmt::Display for DiagElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.slots.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "a{} (x) {}", i + 1, format_lie(s))?;
        }
        Ok(())
    }
}

/// `sum_leaves col(l) (x) word(l)` over a combination of trees.
pub fn eta_tree(g: usize, trees: &[Tree]) -> Result<DiagElt> {
    let mut out = DiagElt::zero(g);
    for t in trees {
        for (v, l) in t.leaves() {
            if l.i == 0 || l.i > g {
                return precondition(
                    "MALFORMED_TREE",
                    format!("leaf index {} outside genus {g}", l.i),
                );
            }
            let w = t.half_word(v, t.leaf_edge(v));
            out.add_leaf(l, &w, &t.coeff);
        }
    }
    Ok(out)
}

/// Trees whose image under [`eta_tree`] is `d`: a bracket-free lift
/// `sum u (x) v` is drawn as trees rooted at `u`, weighted by `1/(k+1)`.
pub fn tree_present(d: &DiagElt) -> Result<Vec<Tree>> {
    let lift = bracket_trivial_lift(&d.derivation_data()).or_else(|_| {
        precondition(
            "BETA_CONDITION",
            "the element is not in the kernel of the bracket",
        )
    })?;
    let mut out = Vec::new();
    for (u, v) in lift {
        for (w, c) in v.terms() {
            let weight = c / Q::from_integer(Z::from(w.len() + 1));
            out.push(Tree::join(
                weight,
                &Half::Leaf(u.clone()),
                &Half::of_lyndon(w),
            ));
        }
    }
    Ok(out)
}

/// Bracket of two tree combinations.
pub fn bracket_trees(d: &[Tree], e: &[Tree]) -> Vec<Tree> {
    let mut out = Vec::new();
    for s in d {
        for t in e {
            out.extend(Tree::bracket(s, t));
        }
    }
    out
}

/// The tree bracket on canonical forms.
pub fn tree_bracket(d: &DiagElt, e: &DiagElt) -> Result<DiagElt> {
    eta_tree(d.g, &bracket_trees(&tree_present(d)?, &tree_present(e)?))
}

/// The derivation of `Lie(A)` attached to `d`, on an element of `A`.
pub fn tree_derivation_apply(d: &DiagElt, a: &AElt) -> Result<Lie> {
    let trees = tree_present(d)?;
    let mut out = Lie::zero();
    for (l, c) in a.letters() {
        for t in &trees {
            out.add_scaled(&t.apply_letter(&l), &c);
        }
    }
    Ok(out)
}

/// The tree `P --- Q` for Lie elements `P`, `Q`, expanded at both ends.
pub fn eta_join(g: usize, p: &Lie, q: &Lie) -> DiagElt {
    let mut trees = Vec::new();
    for (u, a) in p.terms() {
        for (v, b) in q.terms() {
            trees.push(Tree::join(a * b, &Half::of_lyndon(u), &Half::of_lyndon(v)));
        }
    }
    eta_tree(g, &trees).expect("letters of the genus")
}

/// `tau_k` of `f` in the tree space.
pub fn tau_d(f: &Endo, k: usize) -> Result<DiagElt> {
    Ok(DiagElt::from_derivation(&tau(f, k)?))
}

/// `-1/2 sum a_i --m_ij--> a_j` for a hermitian matrix over `Z[F]`.
pub fn tree_from_matrix(m: &RingMatrix<Z>) -> Result<DiagElt> {
    if !crate::foxcalc::is_hermitian(m) {
        return precondition(
            "NOT_HERMITIAN",
            "matrix differs from its conjugate transpose",
        );
    }
    let g = m.rows;
    let mut trees = Vec::new();
    for i in 1..=g {
        for j in 1..=g {
            for (y, n) in m.get(i - 1, j - 1).terms() {
                let c = Q::new(-n.clone(), Z::from(2));
                trees.push(Tree::segment(c, Letter::a(i), y.clone(), Letter::a(j)));
            }
        }
    }
    eta_tree(g, &trees)
}

/// The hermitian matrix of a degree-one element: `m_ij` is minus the
/// coefficient of `a_j` in slot `i`.
pub fn matrix_of(d: &DiagElt) -> RingMatrix<Z> {
    RingMatrix::from_fn(d.g, d.g, |i, j| {
        let mut r = crate::groupring::ZG::zero();
        for (w, c) in d.slots[i].homogeneous(1).terms() {
            if w[0].i == j + 1 {
                r.add_term(-c.to_integer(), w[0].f.clone());
            }
        }
        r
    })
}

/// `-1/2 [u] --- [u]` for a word `u` of `A`.
pub fn disk_twist_tau1(g: usize, u: &Word) -> Result<DiagElt> {
    let c = class_of(g, u, 1, 1)?;
    Ok(eta_join(g, &c, &c).scale(&Q::new(Z::from(-1), Z::from(2))))
}

/// Upper-left entry of the matrix of a degree-one element with every
/// `x_i` sent to `t`.
pub fn mccullough_m(d: &DiagElt) -> Result<Laurent> {
    if !d.slots.iter().all(|s| s.homogeneous(1) == *s) {
        return precondition("BAD_DEGREE", "element is not of degree one");
    }
    let m = matrix_of(d);
    let mut out = Laurent::default();
    for (w, c) in m.get(0, 0).terms() {
        let e: i64 = w.letters().iter().map(|l| l.signum() as i64).sum();
        out.add_term(e, c.clone());
    }
    Ok(out)
}

/// The word `beta_k^n alpha_j beta_k^-n alpha_i`.
fn meridian_word(g: usize, i: usize, j: usize, k: usize, n: i64) -> Word {
    let z = crate::words::beta(g, k).pow(n);
    z.mul(&crate::words::alpha(g, j))
        .mul(&z.inv())
        .mul(&crate::words::alpha(g, i))
}

/// `a_2 --x_3^-n--> a_1`.
pub fn ell_n_tau1(g: usize, n: i64) -> Result<DiagElt> {
    if g < 3 {
        return precondition("GENUS_TOO_SMALL", "needs genus at least 3");
    }
    let x3n = Word::gen(3).pow(-n);
    eta_tree(
        g,
        &[Tree::segment(Q::one(), Letter::a(2), x3n, Letter::a(1))],
    )
}

/// The same value as a combination of three disk-twist values.
pub fn ell_n_tau1_composite(g: usize, n: i64) -> Result<DiagElt> {
    if g < 3 {
        return precondition("GENUS_TOO_SMALL", "needs genus at least 3");
    }
    let u = disk_twist_tau1(g, &meridian_word(g, 1, 2, 3, n))?;
    let a1 = tau_d(&catalog::twist_alpha(g, 1)?, 1)?;
    let a2 = tau_d(&catalog::twist_alpha(g, 2)?, 1)?;
    Ok(a1.add(&a2).sub(&u))
}

/// The class of the `gamma_n` curve, `alpha'_1 z alpha_1^-1 z^-1` with `z = beta_2^n`.
pub fn gamma_n_word(g: usize, n: i64) -> Word {
    let z = crate::words::beta(g, 2).pow(n);
    crate::words::alpha_prime(g, 1)
        .mul(&z)
        .mul(&crate::words::alpha(g, 1).inv())
        .mul(&z.inv())
}

/// Drops everything coming from trees with two or more leaves of index 1.
///
/// Contributions of such trees carry at least one index-1 letter in slot 1
/// and at least two in the other slots; the Lyndon basis respects the
/// letter-index grading, so the truncation is well defined.
pub fn project_mod_r(d: &DiagElt) -> DiagElt {
    let ones = |w: &[Letter]| w.iter().filter(|l| l.i == 1).count();
    let mut out = DiagElt::zero(d.g);
    for (k, s) in d.slots.iter().enumerate() {
        let bound = if k == 0 { 0 } else { 1 };
        out.slots[k] = s.filter_terms(|w| ones(w) <= bound);
    }
    out
}

/// The tree rooted at an `a_1`-leaf with the Lie element `w` above it.
pub fn rooted_at_a1(g: usize, w: &Lie) -> DiagElt {
    eta_join(g, &Lie::letter(Letter::a(1)), w)
}

/// Rank of a family of elements over `Q`.
pub fn rank(family: &[DiagElt]) -> usize {
    let mut rows: Vec<BTreeMap<(usize, Vec<Letter>), Q>> =
        family.iter().map(|d| d.coordinates()).collect();
    let mut r = 0;
    while let Some(k) = rows.iter().position(|row| !row.is_empty()) {
        let pivot_row = rows.swap_remove(k);
        let (key, pv) = pivot_row
            .iter()
            .next()
            .map(|(a, b)| (a.clone(), b.clone()))
            .expect("nonempty");
        for row in rows.iter_mut() {
            if let Some(c) = row.get(&key).cloned() {
                let f = c / &pv;
                for (kk, v) in &pivot_row {
                    let e = row.entry(kk.clone()).or_insert_with(Q::zero);
                    *e -= &f * v;
                    if e.is_zero() {
                        row.remove(kk);
                    }
                }
            }
        }
        r += 1;
    }
    r
}

/// `-eta(1/2 log theta(u) --- log theta(u))` as a derivation of degrees `1..=n`.
pub fn kk_rhs(theta: &Expansion, u: &Word, n: usize) -> Result<SpecialDerivation> {
    if !theta.is_special() {
        return precondition("NOT_SPECIAL", "the expansion is not special");
    }
    if theta.n < n + 1 {
        return precondition(
            "TRUNCATION",
            "expansion truncated below the requested degree",
        );
    }
    let g = theta.g;
    let l = theta.ell(u)?;
    let mut d = DiagElt::zero(g);
    for p in 1..=n {
        for q in 1..=n + 1 - p {
            let (lp, lq) = (l.homogeneous(p), l.homogeneous(q));
            if !lp.is_zero() && !lq.is_zero() {
                d = d.add(&eta_join(g, &lp, &lq));
            }
        }
    }
    d.scale(&Q::new(Z::from(-1), Z::from(2))).to_derivation()
}

/// A formal iterated commutator in the pure braid generators `t_ij`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BraidWord {
    T(usize, usize),
    Comm(Box<BraidWord>, Box<BraidWord>),
}

impl BraidWord {
    pub fn degree(&self) -> usize {
        match self {
            BraidWord::T(..) => 1,
            BraidWord::Comm(a, b) => a.degree() + b.degree(),
        }
    }

    /// Parses `t12` or `[w, w]`.
    pub fn parse(s: &str) -> Result<BraidWord> {
        let cs: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let w = BraidWord::parse_at(&cs, &mut pos)?;
        if pos != cs.len() {
            return parse_err(format!("trailing input at {pos}"));
        }
        Ok(w)
    }

    fn parse_at(cs: &[char], pos: &mut usize) -> Result<BraidWord> {
        match cs.get(*pos) {
            Some('t') => {
                let (i, j) = match (
                    cs.get(*pos + 1).and_then(|c| c.to_digit(10)),
                    cs.get(*pos + 2).and_then(|c| c.to_digit(10)),
                ) {
                    (Some(i), Some(j)) if i < j && i > 0 => (i as usize, j as usize),
                    _ => return parse_err(format!("expected t<i><j> with i < j at {}", *pos)),
                };
                *pos += 3;
                Ok(BraidWord::T(i, j))
            }
            Some('[') => {
                *pos += 1;
                let a = BraidWord::parse_at(cs, pos)?;
                if cs.get(*pos) != Some(&',') {
                    return parse_err(format!("expected `,` at {}", *pos));
                }
                *pos += 1;
                let b = BraidWord::parse_at(cs, pos)?;
                if cs.get(*pos) != Some(&']') {
                    return parse_err(format!("expected `]` at {}", *pos));
                }
                *pos += 1;
                Ok(BraidWord::Comm(Box::new(a), Box::new(b)))
            }
            _ => parse_err(format!("expected `t` or `[` at {}", *pos)),
        }
    }

    pub fn max_index(&self) -> usize {
        match self {
            BraidWord::T(_, j) => *j,
            BraidWord::Comm(a, b) => a.max_index().max(b.max_index()),
        }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BraidWord::T(i, j) => write!(f, "t{i}{j}"),
            BraidWord::Comm(a, b) => write!(f, "[{a}, {b}]"),
        }
    }
}

/// Gluing bracket of bead-free trees with plain colors: leaves of equal
/// color are merged into a node carrying a new leaf of that color.
fn glue_bracket(d: &[Tree], e: &[Tree]) -> Vec<Tree> {
    let mut out = Vec::new();
    for s in d {
        for t in e {
            for (v, lv) in s.leaves() {
                for (w, lw) in t.leaves() {
                    if lv != lw {
                        continue;
                    }
                    let (mut m, ov, oe) = Tree::merged(s, t);
                    let (ev, ew, w2) = (s.leaf_edge(v), t.leaf_edge(w) + oe, w + ov);
                    let (n, nl) = (m.verts.len(), m.verts.len() + 1);
                    m.replace_end(ev, v, n);
                    m.replace_end(ew, w2, n);
                    let el = m.edges.len();
                    m.edges.push(Edge {
                        tail: n,
                        head: nl,
                        hol: Word::one(),
                    });
                    m.verts.push(Vert::Node([el, ev, ew]));
                    m.verts.push(Vert::Leaf(lv.clone()));
                    m.verts[v] = Vert::Gone;
                    m.verts[w2] = Vert::Gone;
                    out.push(m.compact());
                }
            }
        }
    }
    out
}

fn milnor_trees(w: &BraidWord) -> Vec<Tree> {
    match w {
        BraidWord::T(i, j) => vec![Tree::segment(
            Q::one(),
            Letter::a(*i),
            Word::one(),
            Letter::a(*j),
        )],
        BraidWord::Comm(a, b) => glue_bracket(&milnor_trees(a), &milnor_trees(b)),
    }
}

/// The Milnor invariant of a commutator of pure braids.
pub fn milnor_mu(g: usize, w: &BraidWord) -> Result<DiagElt> {
    if w.max_index() > g {
        return precondition("GENUS_TOO_SMALL", "braid indices exceed the genus");
    }
    eta_tree(g, &milnor_trees(w))
}

/// `tau_k` of a commutator of pure braids from `tau_1(t_ij) = -a_i --- a_j`.
pub fn braid_tau_d(g: usize, w: &BraidWord) -> Result<DiagElt> {
    match w {
        BraidWord::T(i, j) => {
            if *j > g {
                return precondition("GENUS_TOO_SMALL", "braid indices exceed the genus");
            }
            eta_tree(
                g,
                &[Tree::segment(
                    -Q::one(),
                    Letter::a(*i),
                    Word::one(),
                    Letter::a(*j),
                )],
            )
        }
        BraidWord::Comm(a, b) => tree_bracket(&braid_tau_d(g, a)?, &braid_tau_d(g, b)?),
    }
}

/// Whether `(-1)^k mu_k(w)` equals `tau_k(w)`.
pub fn milnor_square_check(g: usize, w: &BraidWord) -> Result<bool> {
    let k = w.degree();
    let mu = milnor_mu(g, w)?;
    let sign = if k % 2 == 0 { Q::one() } else { -Q::one() };
    Ok(mu.scale(&sign) == braid_tau_d(g, w)?)
}

/// Checks the agreement of the tree bracket with the derivation bracket.
pub fn bracket_oracle(d: &DiagElt, e: &DiagElt) -> Result<bool> {
    let k = d
        .slots
        .iter()
        .chain(&e.slots)
        .filter_map(|s| s.max_degree())
        .max()
        .unwrap_or(0);
    let via_trees = tree_bracket(d, e)?;
    let via_derivations =
        DiagElt::from_derivation(&d.to_derivation()?.bracket(&e.to_derivation()?, 2 * k));
    if via_trees != via_derivations {
        return Ok(false);
    }
    Ok(true)
}

/// Fails unless two computations of the same element agree.
pub fn require_equal(a: &DiagElt, b: &DiagElt, what: &str) -> Result<()> {
    if a != b {
        return internal(format!("{what}: routes disagree"));
    }
    Ok(())
}

/// `tau_1` of a twist read off the Magnus matrix.
pub fn tau1_from_magnus(f: &Endo) -> Result<DiagElt> {
    tree_from_matrix(&magnus(f)?)
}

/// Explicit instances of the defining relations of the tree space, each a
/// combination that must vanish; genus at least 3.
pub fn relation_instances(g: usize) -> Vec<(&'static str, Vec<Tree>)> {
    let x = Word::from_letters([1, -2]);
    let y = Word::from_letters([3]);
    let la = |f: &[i32], i: usize| {
        Half::Leaf(Letter::new(Word::from_letters(f.iter().copied()), i.min(g)))
    };
    let (r, a, b, c) = (la(&[], 1), la(&[2], 2), la(&[], 3), la(&[-1], 1));
    let one = Q::one;
    let neg = || -Q::one();
    let t = |k: Q, l: &Half, h: &Half| Tree::join(k, l, h);
    let bead = |w: &Word, h: &Half| Half::bead(w.clone(), h.clone());
    let node = |p: &Half, q: &Half| Half::node(p.clone(), q.clone());
    // a deeper context so that relations are applied inside a tree
    let ctx = |h: Half| Half::node(bead(&y, &c), h);
    vec![
        (
            "AS",
            vec![
                t(one(), &r, &ctx(node(&a, &b))),
                t(one(), &r, &ctx(node(&b, &a))),
            ],
        ),
        (
            "IHX",
            vec![
                t(one(), &r, &node(&node(&a, &b), &c)),
                t(one(), &r, &node(&node(&b, &c), &a)),
                t(one(), &r, &node(&node(&c, &a), &b)),
            ],
        ),
        (
            "Hopf unit",
            vec![
                t(one(), &r, &ctx(bead(&Word::one(), &node(&a, &b)))),
                t(neg(), &r, &ctx(node(&a, &b))),
            ],
        ),
        (
            "Hopf product",
            vec![
                t(one(), &r, &ctx(bead(&x, &bead(&y, &node(&a, &b))))),
                t(neg(), &r, &ctx(bead(&x.mul(&y), &node(&a, &b)))),
            ],
        ),
        (
            "Hopf antipode",
            vec![
                t(one(), &bead(&x, &node(&r, &c)), &node(&a, &b)),
                t(neg(), &node(&r, &c), &bead(&x.inv(), &node(&a, &b))),
            ],
        ),
        (
            "Hopf coproduct",
            vec![
                t(one(), &r, &ctx(bead(&x, &node(&a, &b)))),
                t(neg(), &r, &ctx(node(&bead(&x, &a), &bead(&x, &b)))),
            ],
        ),
        (
            "bead-out",
            vec![
                t(one(), &r, &ctx(node(&bead(&x, &a), &b))),
                t(neg(), &r, &ctx(node(&la(&[1, -2, 2], 2), &b))),
            ],
        ),
        (
            "multilinearity",
            vec![
                t(Q::from_integer(Z::from(3)), &r, &ctx(node(&a, &b))),
                t(neg(), &r, &ctx(node(&a, &b))),
                t(Q::from_integer(Z::from(-2)), &r, &ctx(node(&a, &b))),
            ],
        ),
    ]
}

/// Random trees for property checks.
pub mod random {
    use super::*;
    use rand::Rng;

    pub fn word<R: Rng>(rng: &mut R, g: usize, max_len: usize) -> Word {
        let n = rng.gen_range(0..=max_len);
        Word::from_letters((0..n).map(|_| {
            let k = rng.gen_range(1..=g) as i32;
            if rng.gen_bool(0.5) {
                k
            } else {
                -k
            }
        }))
    }

    pub fn letter<R: Rng>(rng: &mut R, g: usize, max_len: usize) -> Letter {
        Letter::new(word(rng, g, max_len), rng.gen_range(1..=g))
    }

    fn maybe_bead<R: Rng>(rng: &mut R, g: usize, bead_len: usize, h: Half) -> Half {
        if bead_len > 0 && rng.gen_bool(0.5) {
            let x = word(rng, g, bead_len);
            if !x.is_one() {
                return Half::bead(x, h);
            }
        }
        h
    }

    /// A half with `n` leaves.
    pub fn half<R: Rng>(
        rng: &mut R,
        g: usize,
        n: usize,
        color_len: usize,
        bead_len: usize,
    ) -> Half {
        let h = if n == 1 {
            Half::Leaf(letter(rng, g, color_len))
        } else {
            let k = rng.gen_range(1..n);
            Half::node(
                half(rng, g, k, color_len, bead_len),
                half(rng, g, n - k, color_len, bead_len),
            )
        };
        maybe_bead(rng, g, bead_len, h)
    }

    /// A tree of degree `k` with small integer coefficient.
    pub fn tree<R: Rng>(
        rng: &mut R,
        g: usize,
        k: usize,
        color_len: usize,
        bead_len: usize,
    ) -> Tree {
        let c = Q::from_integer(Z::from(rng.gen_range(1..=3i64)));
        let l = Half::Leaf(letter(rng, g, color_len));
        Tree::join(c, &l, &half(rng, g, k, color_len, bead_len))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liefree::parse_lie;

    fn a(i: usize) -> Letter {
        Letter::a(i)
    }

    #[test]
    fn eta_examples() {
        let t = Tree::segment(Q::one(), a(1), Word::one(), a(2));
        let d = eta_tree(2, &[t]).unwrap();
        assert_eq!(d.slots[0], Lie::letter(a(2)));
        assert_eq!(d.slots[1], Lie::letter(a(1)));

        let y = Tree::join(
            Q::one(),
            &Half::Leaf(a(1)),
            &Half::node(Half::Leaf(a(2)), Half::Leaf(a(3))),
        );
        let d = eta_tree(3, &[y]).unwrap();
        assert_eq!(d.slots[0], parse_lie(3, "[a2, a3]").unwrap());
        assert_eq!(d.slots[1], parse_lie(3, "[a3, a1]").unwrap());
        assert_eq!(d.slots[2], parse_lie(3, "[a1, a2]").unwrap());

        let x = Word::gen(1);
        let t = Tree::segment(Q::one(), a(1), x.clone(), a(2));
        let d = eta_tree(2, &[t]).unwrap();
        assert_eq!(d.slots[0], Lie::letter(a(2).translate(&x)));
        assert_eq!(d.slots[1], Lie::letter(a(1).translate(&x.inv())));
    }

    #[test]
    fn text_roundtrip() {
        let s = "(tree 1/2 (node (leaf () 1) (node (bead (x1 x2^-1) (leaf () 2)) (leaf (x3) 3))))";
        let ts = parse_trees(3, s).unwrap();
        assert_eq!(ts[0].format(), s);
    }

    #[test]
    fn present_roundtrip_small() {
        let y = Tree::join(
            Q::one(),
            &Half::Leaf(a(1)),
            &Half::node(Half::Leaf(a(2)), Half::Leaf(a(3))),
        );
        let d = eta_tree(3, &[y]).unwrap();
        assert_eq!(eta_tree(3, &tree_present(&d).unwrap()).unwrap(), d);
    }

    #[test]
    fn bracket_examples() {
        let s11 = eta_tree(2, &[Tree::segment(Q::one(), a(1), Word::one(), a(1))]).unwrap();
        let s22 = eta_tree(2, &[Tree::segment(Q::one(), a(2), Word::one(), a(2))]).unwrap();
        assert!(tree_bracket(&s11, &s22).unwrap().is_zero());
        let s12 = eta_tree(3, &[Tree::segment(Q::one(), a(1), Word::one(), a(2))]).unwrap();
        let s23 = eta_tree(3, &[Tree::segment(Q::one(), a(2), Word::one(), a(3))]).unwrap();
        assert!(bracket_oracle(&s12, &s23).unwrap());
    }
}
