use owb::enrich::*;
use owb::perms::Profile;
use owb::planar::*;
fn main() {
    let c = owb::operad::mono();
    let mut op = PlanarOperad::new(Tag::FinSet, vec![c.clone()], 3);
    let star = Obj::Fin(FinSetObj::from_atoms(["*"]));
    for n in 0..=3usize {
        op.set_component(Profile::new(vec![c.clone(); n], c.clone()), star.clone()).unwrap();
    }
    op.set_unit(c.clone(), Map::from_fn(&Obj::unit(Tag::FinSet), &star, |_| Elem::atom("*")).unwrap());
    for (outer, i, inner) in op.expected_gamma_keys() {
        let src = star.tensor(&star).unwrap();
        op.set_gamma(outer, i, inner, Map::from_fn(&src, &star, |_| Elem::atom("*")).unwrap());
    }
    println!("{}", check_planar_operad(&op));
}
