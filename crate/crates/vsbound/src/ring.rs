//! Minimal commutative-ring interface shared by the coefficient structures
//! in this crate (prime/extension fields, tower extensions, truncated
//! Witt rings).
//!
//! Elements do not carry a reference to their ring; every operation takes
//! the ring context explicitly. This keeps elements plain data (cheap to
//! clone, hash, store in maps) at the cost of the caller having to thread
//! the context through.

use std::fmt::Debug;

/// Context object providing arithmetic for its element type.
pub trait Ring {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    /// Square-and-multiply exponentiation. `pow(a, 0)` is `one`.
    fn pow(&self, a: &Self::Elem, k: u64) -> Self::Elem {
        let mut result = self.one();
        let mut base = a.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(&result, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }
}
