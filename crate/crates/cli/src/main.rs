fn main() {
    println!("qra");
}
