//! Prints the composite of two cubic involutions in the map-file format read
//! by `solidus decompose`.
//!
//! cargo run -p solidus-cli --example make_example_map > iota_prime_iota.json

use serde_json::json;
use solidus::birational::{word_map, Letter};

fn main() {
    let m = word_map(&[Letter::IotaPrime, Letter::Iota]).expect("the composite is defined");
    let components: Vec<String> = m.components().iter().map(|f| f.to_string()).collect();
    let doc = json!({ "degree": m.degree(), "components": components });
    println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
}
