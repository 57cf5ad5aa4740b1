//! Mutates a skew-symmetrizable matrix and checks that mutation is an involution.
//!
//! cargo run --example mutate_matrix

use mutclass::ExchangeMatrix;

fn main() {
    // B2: d = (1, 2)
    let b = ExchangeMatrix::from_rows([[0, 2], [-1, 0]]).unwrap();
    println!("B =\n{}", b.matrix());
    println!("symmetrizer = {:?}", b.symmetrizer());

    let b1 = b.mutate(0).unwrap();
    println!("mu_1(B) =\n{}", b1.matrix());
    assert_eq!(b1.mutate(0).unwrap(), b);

    let c = ExchangeMatrix::from_rows([[0, 1, 0], [-1, 0, 1], [0, -1, 0]]).unwrap();
    let walk = [1, 0, 2, 1];
    println!("A3 after mutating at 2,1,3,2 =\n{}", c.mutate_seq(&walk).unwrap().matrix());
}
