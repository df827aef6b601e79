//! Runs a campaign under a node limit, then resumes it from the token until
//! it completes, merging the partial reports.
use surfgraph::enumerate::{run_campaign, Campaign, CampaignError, CampaignReport, CampaignSpec};
use surfgraph::io::write_report;

fn main() {
    let mut spec = CampaignSpec::new(Campaign::ParallelFamily);
    spec.bounds.n_partner = (1, 10);
    spec.limits.max_nodes = Some(20_000);
    let mut parts: Vec<CampaignReport> = Vec::new();
    loop {
        match run_campaign(&spec) {
            Ok((r, stats)) => {
                println!("finished in {} ms", stats.elapsed_ms);
                parts.push(r);
                break;
            }
            Err(CampaignError::ResourceLimit { report, token, .. }) => {
                println!("stopped after {} of {} units; resuming from {token}", report.units_done, report.units_total);
                parts.push(*report);
                spec.resume = Some(token);
            }
            Err(e) => panic!("{e}"),
        }
    }
    let mut merged = parts.remove(0);
    for p in parts {
        merged.merge(p).expect("parts are consecutive");
    }
    print!("{}", write_report(&merged));
}
