//! Binary digits of a few exact reals and their frequency of ones.
//!
//! cargo run --example digit_expansion -- [bits]

use tu_lab::digits::{freq_f_n, prefix_bits};
use tu_lab::{ExactReal, Rat};

fn main() -> tu_lab::Result<()> {
    let bits: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(48);
    let third = Rat::new(1, 3);
    let numbers = [
        ("1/3", ExactReal::from(third.clone())),
        ("sqrt(1/3)", ExactReal::sqrt_of_rat(third)?),
        ("sqrt(1/2)", ExactReal::sqrt_of_rat(Rat::new(1, 2))?),
        ("frac(sqrt(2))", ExactReal::frac_sqrt(&2u32.into())?),
    ];
    for (name, x) in &numbers {
        let p = prefix_bits(x, bits)?;
        let f = freq_f_n(&p)?;
        println!("{name:>14}  {p}  f = {f} ({})", f.to_decimal());
    }
    Ok(())
}
