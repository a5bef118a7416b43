//! Size limits applied to declarations and tasks, so that every accepted
//! document can be evaluated in reasonable time and memory.

pub const MAX_PRIME: i64 = 1000;
pub const MAX_GROUP_ORDER: i64 = 32;
/// Generators of a module, and the rank of a free module.
pub const MAX_GENERATORS: usize = 8;
pub const MAX_RELATIONS: usize = 16;
/// Largest absolute value of an integer matrix entry.
pub const MAX_ENTRY: i64 = 1_000_000;
pub const MAX_OBJECTS: usize = 8;
pub const MAX_ARROWS: usize = 24;
pub const MAX_DEGREE: usize = 8;
pub const MAX_COMPLEX: usize = 8;
pub const MAX_CASES: usize = 1000;

pub fn is_prime(p: i64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}
