// Exact group law on the Heisenberg algebra and the class-3 free algebra.

use nilorth::lie::library;
use nilorth::scalar::{format_rational, rational};
use nilorth::Rational;

fn show(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}

fn main() -> nilorth::Result<()> {
    let h = library::heisenberg();
    let x = vec![rational(1, 2), rational(0, 1), rational(0, 1)];
    let y = vec![rational(0, 1), rational(1, 3), rational(0, 1)];
    println!("[X, Y]        = {}", show(&h.bracket(&x, &y)?));
    println!("log(e^X e^Y)  = {}", show(&h.bch(&x, &y)?));
    println!("second kind   = {}", show(&h.first_to_second(&h.bch(&x, &y)?)?));

    let f = library::free_class3();
    println!("free3 central series dims {:?}", f.central_series_dims());
    let a: Vec<Rational> = (1..=5).map(|i| rational(i, 7)).collect();
    let b: Vec<Rational> = (1..=5).map(|i| rational(-1, i)).collect();
    let c: Vec<Rational> = (1..=5).map(|i| rational(i * i, 3)).collect();
    let left = f.bch(&f.bch(&a, &b)?, &c)?;
    let right = f.bch(&a, &f.bch(&b, &c)?)?;
    println!("associative on a sample triple: {}", left == right);
    print!("{}", f.to_text());
    Ok(())
}
