use clap::Parser;
use fuselab::cli::{run, JobSpec};

fn main() {
    let job = JobSpec::parse();
    let out = run(&job);
    print!("{}", out.render(job.options.format));
    std::process::exit(out.exit_code);
}
