mod common;

#[test]
fn constructed_covers_pass_every_check() {
    println!("{}", common::suites::abelian_covers(128, true).unwrap());
}
