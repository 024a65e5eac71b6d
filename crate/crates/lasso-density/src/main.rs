use std::io;

fn main() {
    let cap = std::env::var(lasso_density::cli::CAP_ENV).ok();
    let code = lasso_density::cli::run(
        std::env::args_os(),
        cap.as_deref(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    std::process::exit(code);
}
