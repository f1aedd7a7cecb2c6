use lojres::ideal::{Colength, Ideal};
use lojres::poly::parse_poly;
use lojres::vars::Vars;

#[test]
#[ignore]
fn example1_multiplicity() {
    let v = Vars::new(&["x", "y", "z"]);
    let gens = ["x^4 + x*y*z + y^4", "x*y^2*z", "y^5 + z^5"]
        .iter()
        .map(|s| parse_poly(s, &v).unwrap())
        .collect();
    let i = Ideal::new(&v, gens);
    let t0 = std::time::Instant::now();
    println!("colength(I) = {:?} in {:?}", i.colength(), t0.elapsed());
    for m in 1..=8u32 {
        let t = std::time::Instant::now();
        let c = i.power(m).colength();
        println!("H({m}) = {:?}  [{:?}]", c, t.elapsed());
    }
    let t1 = std::time::Instant::now();
    let e = i.samuel_multiplicity();
    println!("e(I) = {:?} in {:?}", e, t1.elapsed());
    assert_eq!(e.unwrap(), 80);
}
