use crate::analysis::expansion::{find_expansion, DigitExpansion, ExpansionSpec};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// The digit-halving map from the ternary Cantor set onto `[0, 1]`: ternary
/// digits 0 and 2 become binary digits 0 and 1.
///
/// Only defined on the set itself; any other point is reported with the
/// position where every admissible ternary expansion breaks down.
pub fn cantor_function(x: &Rational) -> Result<Rational> {
    let ternary = ExpansionSpec::new(3, [0, 2]).expect("valid");
    match find_expansion(&ternary, x)? {
        Ok(e) => {
            let halve = |ds: &[u32]| ds.iter().map(|d| d / 2).collect();
            Ok(DigitExpansion { base: 2, preperiod: halve(&e.preperiod), period: halve(&e.period) }.value())
        }
        Err(dead) => Err(Error::NotInSet {
            x: x.to_string(),
            base: 3,
            position: dead.position,
            digit: dead.digit,
        }),
    }
}
