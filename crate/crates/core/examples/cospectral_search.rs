//! Searching for cospectral non-isomorphic Cayley graphs.

use cayley_spectra::catalog::groups_of_order;
use cayley_spectra::search::{
    cay_ds_verdict, find_cospectral_mates, replay, with_jobs, CayDsVerdict, SearchScope,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let order: usize = std::env::args().nth(1).map_or(Ok(12), |a| a.parse())?;
    let groups = groups_of_order(order)?;
    let scope = SearchScope::new(groups.clone()).connected_only();
    let pairs = with_jobs(Some(2), || find_cospectral_mates(&scope))??;
    println!("order {order}: {} pairs", pairs.len());
    for p in &pairs {
        assert!(replay(p)?);
        println!(
            "  {} {{{}}}  ~  {} {{{}}}",
            p.first.group,
            p.first.words.join(", "),
            p.second.group,
            p.second.words.join(", ")
        );
    }

    for g in &groups {
        match cay_ds_verdict(g, &groups)? {
            CayDsVerdict::NotCayDs { witness } => {
                let side = |m: &cayley_spectra::search::MateMember| {
                    format!(
                        "{{{}}} (over {})",
                        m.words.join(", "),
                        m.realized_over.join(", ")
                    )
                };
                println!(
                    "{}: {}  ~  {}",
                    g.label(),
                    side(&witness.first),
                    side(&witness.second)
                )
            }
            CayDsVerdict::CayDsRelative { peers } => {
                println!("{}: no mates among {peers:?}", g.label())
            }
        }
    }
    Ok(())
}
