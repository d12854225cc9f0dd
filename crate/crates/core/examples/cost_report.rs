//! Area, delay and area-delay product of the five designs, the improvement
//! over Gao, and the published totals that disagree with their own terms.

use bcdlut::cost::{
    builtin_cost_table, compare_report, design_catalog, improvements, reconcile_expressions, write_report_csv, GAO,
    PROPOSED,
};

fn main() {
    let catalog = design_catalog();
    let rows = compare_report(&catalog, &[1, 8, 16, 32]).expect("n >= 1");
    write_report_csv(&rows, std::io::stdout()).expect("stdout");

    let i = improvements(&catalog, GAO, PROPOSED).unwrap();
    println!("\n{PROPOSED} vs {GAO}: area -{:.2}%, delay -{:.2}%, ADP -{:.2}%", i.area_pct, i.delay_pct, i.adp_pct);

    println!("\ncomplexity:");
    for d in &catalog {
        println!("  {:<10} {}", d.name, d.complexity);
    }

    println!("\ntotals that do not follow from their terms:");
    for r in reconcile_expressions(&catalog, &builtin_cost_table()).unwrap() {
        if !r.matches {
            println!("  {} {}: stated {}, terms give {}", r.design, r.metric, r.stated, r.computed);
        }
    }
}
