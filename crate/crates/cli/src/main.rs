use std::process::ExitCode;

fn main() -> ExitCode {
    match actorkit_cli::run_from(std::env::args_os()) {
        Ok((out, code)) => {
            if code == 0 || !out.starts_with("error: ") {
                print!("{out}");
                if !out.ends_with('\n') {
                    println!();
                }
            } else {
                eprintln!("{out}");
            }
            ExitCode::from(code as u8)
        }
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            ExitCode::from(code as u8)
        }
    }
}
