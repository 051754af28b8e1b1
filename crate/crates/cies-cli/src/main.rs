fn main() {
    println!("cies");
}
