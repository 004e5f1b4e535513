use std::process::ExitCode;

fn main() -> ExitCode {
    match qident_cli::run(std::env::args_os()) {
        Ok((report, json)) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                print!("{}", report.render_text());
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            ExitCode::from(if usage { 2 } else { 0 })
        }
    }
}
