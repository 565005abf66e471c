//! Runs the full verification battery and prints one line per check.

use qhcalc::battery::{battery_text, run_battery, BatteryConfig};

fn main() {
    let results = run_battery(&BatteryConfig::default());
    print!("{}", battery_text(&results));
}
