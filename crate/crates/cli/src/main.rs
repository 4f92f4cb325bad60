use std::process::ExitCode;

fn main() -> ExitCode {
    match linrec_cli::run(std::env::args_os()) {
        Ok(out) => {
            for line in &out.stderr {
                eprintln!("{line}");
            }
            print!("{}", out.stdout);
            ExitCode::SUCCESS
        }
        Err(e) => {
            let code = e.exit_code();
            if code == 0 {
                print!("{e}");
            } else {
                eprintln!("{}", e.to_string().trim_end());
            }
            ExitCode::from(code)
        }
    }
}
