use burniat::{parse_tilings, restrict_tiling, BurniatAmbient};

#[test]
fn probe_restriction_vs_table1() {
    let data = |f: &str| {
        std::fs::read_to_string(format!("{}/../../data/{f}", env!("CARGO_MANIFEST_DIR"))).unwrap()
    };
    let ap09 = parse_tilings(&data("ap09_table2.tiling")).unwrap();
    let table1 = parse_tilings(&data("table1.tiling")).unwrap();
    let bur5 = BurniatAmbient::from_name("bur5").unwrap();

    let ap2 = ap09.iter().find(|t| t.name == "ap09-2").unwrap();
    let (restricted, report) = restrict_tiling(ap2, bur5).unwrap();
    println!("restrict(ap09-2): kept {} pieces, dropped {:?}", restricted.pieces.len(), report.dropped());

    let row1 = &table1[0];
    for (i, rp) in restricted.pieces.iter().enumerate() {
        let rpoly = restricted.piece_in_ambient(i).unwrap();
        for (j, tp) in row1.pieces.iter().enumerate() {
            let tpoly = row1.piece_in_ambient(j).unwrap();
            let eq = rpoly.same_point_set(&tpoly).unwrap();
            let sub = rpoly.contains_in(&tpoly).unwrap().holds();
            let sup = tpoly.contains_in(&rpoly).unwrap().holds();
            println!("  restricted {} vs row1 {}: equal={eq} sub={sub} sup={sup}", rp.name, tp.name);
        }
    }

    // Which of row 1's pieces overlap full-dimensionally? print pair volumes
    for i in 0..row1.pieces.len() {
        for j in (i + 1)..row1.pieces.len() {
            let mut sys = row1.piece_in_ambient(i).unwrap();
            for c in &row1.pieces[j].ineqs { sys.push(c.clone()).unwrap(); }
            let dim = sys.affine_dim();
            println!("  row1 overlap {}-{}: dim={dim}", row1.pieces[i].name, row1.pieces[j].name);
        }
    }
    // And restrict ap09-10: which pieces drop?
    let ap10 = ap09.iter().find(|t| t.name == "ap09-10").unwrap();
    let (r10, rep10) = restrict_tiling(ap10, bur5).unwrap();
    println!("restrict(ap09-10): kept {}, dropped {:?}", r10.pieces.len(), rep10.dropped());
    let ap8 = ap09.iter().find(|t| t.name == "ap09-8").unwrap();
    let (r8, rep8) = restrict_tiling(ap8, bur5).unwrap();
    println!("restrict(ap09-8): kept {}, dropped {:?}", r8.pieces.len(), rep8.dropped());
    // Is bur5 inside ap09-8 piece M1?
    let amb5 = bur5.polytope();
    let m1 = ap8.piece_polytope(0).unwrap();
    println!("bur5 subset of ap09-8 M1: {}", amb5.contains_in(&m1).unwrap().holds());
}
