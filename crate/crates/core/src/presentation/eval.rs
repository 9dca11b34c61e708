use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use itertools::Itertools;

use super::Presentation;
use crate::finset::FiniteFunction;

/// A raw term `shape(args…)` over `{0, …, n-1}`. When stored in an
/// [`EvaluatedObject`] it is the lexicographically least term of its class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementRef {
    pub shape: usize,
    pub args: Vec<usize>,
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(len: usize) -> Self {
        UnionFind {
            parent: (0..len).collect(),
            rank: vec![0; len],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            x = std::mem::replace(&mut self.parent[x], root);
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

/// Calls `visit` with every tuple in `{0, …, base-1}^len`, lexicographically.
fn for_each_tuple(base: usize, len: usize, mut visit: impl FnMut(&[usize])) {
    if len > 0 && base == 0 {
        return;
    }
    let mut tuple = vec![0; len];
    loop {
        visit(&tuple);
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            tuple[i] += 1;
            if tuple[i] < base {
                break;
            }
            tuple[i] = 0;
        }
    }
}

/// The value of a presented functor at a finite set of a given size.
#[derive(Debug)]
pub struct EvaluatedObject {
    size: usize,
    /// Start of each shape's block of raw terms; the final entry is the total.
    offsets: Vec<usize>,
    class_of_raw: Vec<usize>,
    classes: Vec<ElementRef>,
}

impl EvaluatedObject {
    fn compute(presentation: &Presentation, size: usize) -> Self {
        let mut offsets = Vec::with_capacity(presentation.shapes.len() + 1);
        let mut total = 0usize;
        for shape in &presentation.shapes {
            offsets.push(total);
            let count = size
                .checked_pow(shape.arity as u32)
                .expect("raw term count overflows usize");
            total += count;
        }
        offsets.push(total);

        let encode = |shape: usize, args: &mut dyn Iterator<Item = usize>| {
            offsets[shape] + args.fold(0, |acc, a| acc * size + a)
        };

        let mut classes_uf = UnionFind::new(total);
        for eq in &presentation.equations {
            let vars = eq.variables();
            let slot = |v: &String| vars.iter().position(|w| w == v).unwrap();
            let lhs_slots: Vec<usize> = eq.lhs.vars.iter().map(slot).collect();
            let rhs_slots: Vec<usize> = eq.rhs.vars.iter().map(slot).collect();
            for_each_tuple(size, vars.len(), |theta| {
                let l = encode(eq.lhs.shape, &mut lhs_slots.iter().map(|&i| theta[i]));
                let r = encode(eq.rhs.shape, &mut rhs_slots.iter().map(|&i| theta[i]));
                classes_uf.union(l, r);
            });
        }

        // Raw indices follow (shape index, tuple) order, so the first raw
        // term seen in each class is its canonical representative.
        let mut class_of_root = vec![usize::MAX; total];
        let mut class_of_raw = Vec::with_capacity(total);
        let mut classes = Vec::new();
        let mut shape = 0;
        for raw in 0..total {
            while raw >= offsets[shape + 1] {
                shape += 1;
            }
            let root = classes_uf.find(raw);
            if class_of_root[root] == usize::MAX {
                class_of_root[root] = classes.len();
                classes.push(ElementRef {
                    shape,
                    args: decode(raw - offsets[shape], size, presentation.shapes[shape].arity),
                });
            }
            class_of_raw.push(class_of_root[root]);
        }

        EvaluatedObject {
            size,
            offsets,
            class_of_raw,
            classes,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Canonical representatives, one per class, in canonical order.
    pub fn classes(&self) -> &[ElementRef] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn raw_term_count(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    /// Class index of the raw term `shape(args…)`.
    pub fn class_of(&self, shape: usize, args: &[usize]) -> usize {
        let local = args.iter().fold(0, |acc, &a| acc * self.size + a);
        self.class_of_raw[self.offsets[shape] + local]
    }
}

fn decode(mut local: usize, base: usize, arity: usize) -> Vec<usize> {
    let mut args = vec![0; arity];
    for slot in args.iter_mut().rev() {
        *slot = local % base;
        local /= base;
    }
    args
}

/// Evaluates a presentation on objects and morphisms, memoizing results.
pub struct Evaluator {
    presentation: Presentation,
    objects: RwLock<HashMap<usize, Arc<EvaluatedObject>>>,
    morphisms: RwLock<HashMap<FiniteFunction, Arc<FiniteFunction>>>,
}

impl fmt::Debug for Evaluator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Evaluator")
            .field("presentation", &self.presentation.name)
            .finish()
    }
}

impl Evaluator {
    pub fn new(presentation: Presentation) -> Self {
        Evaluator {
            presentation,
            objects: RwLock::default(),
            morphisms: RwLock::default(),
        }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn object(&self, size: usize) -> Arc<EvaluatedObject> {
        if let Some(obj) = self.objects.read().unwrap().get(&size) {
            return Arc::clone(obj);
        }
        let computed = Arc::new(EvaluatedObject::compute(&self.presentation, size));
        let mut cache = self.objects.write().unwrap();
        Arc::clone(cache.entry(size).or_insert(computed))
    }

    /// `Ff`: sends the class of `s(x₁, …, xₖ)` to the class of
    /// `s(f(x₁), …, f(xₖ))`.
    pub fn morphism(&self, f: &FiniteFunction) -> Arc<FiniteFunction> {
        if let Some(mapped) = self.morphisms.read().unwrap().get(f) {
            return Arc::clone(mapped);
        }
        let dom = self.object(f.dom().size());
        let cod = self.object(f.cod().size());
        let mut image = Vec::new();
        let table = dom
            .classes()
            .iter()
            .map(|rep| {
                image.clear();
                image.extend(rep.args.iter().map(|&x| f.apply(x)));
                cod.class_of(rep.shape, &image)
            })
            .collect();
        let mapped = Arc::new(FiniteFunction::from_parts_unchecked(
            dom.len(),
            cod.len(),
            table,
        ));
        let mut cache = self.morphisms.write().unwrap();
        Arc::clone(cache.entry(f.clone()).or_insert(mapped))
    }

    pub fn format_element(&self, element: &ElementRef) -> String {
        let name = &self.presentation.shapes[element.shape].name;
        if element.args.is_empty() {
            name.clone()
        } else {
            format!("{}({})", name, element.args.iter().join(","))
        }
    }

    /// Resolves a term such as `p(0,2)` or `c` to its class in `F(size)`.
    /// Non-canonical terms are accepted and mapped to their class.
    pub fn parse_element(&self, size: usize, text: &str) -> Result<usize, String> {
        let text = text.trim();
        let (name, args) = match text.split_once('(') {
            None => (text, Vec::new()),
            Some((name, rest)) => {
                let inner = rest
                    .trim_end()
                    .strip_suffix(')')
                    .ok_or_else(|| format!("missing `)` in `{text}`"))?;
                let args = inner
                    .split(',')
                    .map(|a| {
                        a.trim()
                            .parse::<usize>()
                            .map_err(|_| format!("`{}` is not a point", a.trim()))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                (name.trim(), args)
            }
        };
        let shape = self
            .presentation
            .shape_index(name)
            .ok_or_else(|| format!("unknown shape `{name}`"))?;
        let arity = self.presentation.shapes[shape].arity;
        if args.len() != arity {
            return Err(format!(
                "`{name}` takes {arity} argument(s), found {}",
                args.len()
            ));
        }
        if let Some(bad) = args.iter().find(|&&a| a >= size) {
            return Err(format!("point {bad} is outside a set of size {size}"));
        }
        Ok(self.object(size).class_of(shape, &args))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn eval(text: &str) -> Evaluator {
        Evaluator::new(parse_presentation(text).unwrap())
    }

    fn names(ev: &Evaluator, size: usize) -> Vec<String> {
        ev.object(size)
            .classes()
            .iter()
            .map(|c| ev.format_element(c))
            .collect()
    }

    const TWINS: &str = "functor twins\nshape c/0\nshape d/0\nshape u/1\neq c = u(a)\neq d = u(a)";

    #[test]
    fn union_find_merges() {
        let mut uf = UnionFind::new(5);
        uf.union(0, 3);
        uf.union(3, 4);
        assert_eq!(uf.find(0), uf.find(4));
        assert_ne!(uf.find(1), uf.find(4));
    }

    #[test]
    fn tuples_over_empty_base() {
        let mut count = 0;
        for_each_tuple(0, 0, |_| count += 1);
        assert_eq!(count, 1);
        for_each_tuple(0, 2, |_| count += 1);
        assert_eq!(count, 1);
        for_each_tuple(3, 2, |_| count += 1);
        assert_eq!(count, 10);
    }

    #[test]
    fn upair_on_three_points() {
        let ev = eval("functor upair\nshape p/2\neq p(a,b) = p(b,a)");
        assert_eq!(
            names(&ev, 3),
            vec!["p(0,0)", "p(0,1)", "p(0,2)", "p(1,1)", "p(1,2)", "p(2,2)"]
        );
        assert_eq!(ev.object(3).raw_term_count(), 9);
    }

    #[test]
    fn twins_at_zero_and_one() {
        let ev = eval(TWINS);
        assert_eq!(names(&ev, 0), vec!["c", "d"]);
        assert_eq!(names(&ev, 1), vec!["c"]);
    }

    #[test]
    fn upair_swap_fixes_pair() {
        let ev = eval("functor upair\nshape p/2\neq p(a,b) = p(b,a)");
        let swap = FiniteFunction::new(2, 2, vec![1, 0]).unwrap();
        let mapped = ev.morphism(&swap);
        let p01 = ev.parse_element(2, "p(0,1)").unwrap();
        assert_eq!(mapped.apply(p01), p01);
    }

    #[test]
    fn twins_from_empty() {
        let ev = eval(TWINS);
        let mapped = ev.morphism(&FiniteFunction::from_empty(1));
        assert_eq!(mapped.table(), &[0, 0]);
    }

    #[test]
    fn identity_maps_to_identity() {
        let ev = eval(TWINS);
        for n in 0..4 {
            assert!(ev.morphism(&FiniteFunction::identity(n)).is_identity());
        }
    }

    #[test]
    fn parse_element_variants() {
        let ev = eval("functor upair\nshape p/2\neq p(a,b) = p(b,a)");
        assert_eq!(ev.parse_element(3, "p(2,0)"), ev.parse_element(3, "p(0,2)"));
        assert!(ev.parse_element(3, "p(0,3)").is_err());
        assert!(ev.parse_element(3, "q(0,1)").is_err());
        assert!(ev.parse_element(3, "p(0)").is_err());
        assert!(ev.parse_element(3, "p(0,1").is_err());
    }

    #[test]
    fn empty_presentation_is_empty_everywhere() {
        let ev = eval("functor nothing");
        for n in 0..4 {
            assert!(ev.object(n).is_empty());
        }
    }
}
