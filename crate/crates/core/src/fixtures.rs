//! Named groups given by standard generators.

use crate::group::PermGroup;

/// Generators of the Mathieu group `M_11` on 11 points, as listed in the
/// ATLAS of Finite Group Representations.
pub const MATHIEU_11_GENERATORS: &str = "deg=11 (1,2,3,4,5,6,7,8,9,10,11); (3,7,11,8)(4,10,5,6)";

/// The group generated by [`MATHIEU_11_GENERATORS`]. Callers that depend on
/// its identity should check the order (7920) themselves.
pub fn mathieu_11() -> PermGroup {
    PermGroup::parse(MATHIEU_11_GENERATORS).expect("fixture parses")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_has_expected_order() {
        let m11 = mathieu_11();
        assert_eq!(m11.degree(), 11);
        assert_eq!(m11.order_u64(), Some(7920));
        assert!(m11.generators().iter().all(|g| g.parity().is_even()));
    }
}
