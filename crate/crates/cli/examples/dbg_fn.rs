fn main() {
    println!("{:?}", interp_core::multi_index::first_natural(2, 5));
}
