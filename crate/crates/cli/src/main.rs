use novelty_cli::alloc_track::TrackingAllocator;

#[global_allocator]
static GLOBAL: TrackingAllocator = TrackingAllocator;

fn main() {
    std::process::exit(novelty_cli::cli::main_with_args(std::env::args_os()));
}
