use std::fmt::Debug;

/// A concrete group with decidable equality, used as an evaluation target.
pub trait Group {
    type Elem: Clone + PartialEq + Debug;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn pow(&self, a: &Self::Elem, sign: i8) -> Self::Elem {
        if sign < 0 {
            self.inv(a)
        } else {
            a.clone()
        }
    }

    /// Closure of `gens` under multiplication (finite groups only).
    fn generated_subgroup(&self, gens: &[Self::Elem]) -> Vec<Self::Elem>
    where
        Self::Elem: Eq + std::hash::Hash,
    {
        let mut seen = std::collections::HashSet::new();
        let mut order = vec![self.identity()];
        seen.insert(self.identity());
        let mut head = 0;
        while head < order.len() {
            let x = order[head].clone();
            head += 1;
            for g in gens {
                let y = self.mul(&x, g);
                if seen.insert(y.clone()) {
                    order.push(y);
                }
            }
        }
        order
    }
}
