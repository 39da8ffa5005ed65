fn main() {
    println!("cpq");
}
