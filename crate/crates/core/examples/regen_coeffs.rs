//! Prints the small-x coefficient tables; redirect into `src/hyp/coeffs.rs`.

fn main() {
    let rows = hypineq::series::constant_rows(hypineq::series::SMALL_X_MAX_POWER).unwrap();
    print!("{}", hypineq::series::render_rust_constants(&rows));
}
