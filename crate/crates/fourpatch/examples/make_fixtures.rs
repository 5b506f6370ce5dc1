//! Write the sample surface documents used in the README to a directory.
//!
//! cargo run -p fourpatch --example make_fixtures -- data

use std::path::PathBuf;

use fourpatch::fixtures::{
    crease_document, random_corner, random_ring, ring_document, split_document, strip_documents,
};
use fourpatch::io_cli::{save_surface, SurfaceDocument};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "data".into()));
    std::fs::create_dir_all(&dir)?;
    let mut r = ChaCha8Rng::seed_from_u64(2024);
    let mut u = || r.gen::<f64>();

    save_surface(&split_document(&mut u), &dir.join("split.json"))?;
    save_surface(
        &crease_document(30f64.to_radians(), &mut u),
        &dir.join("crease.json"),
    )?;

    let [r1, r2, r4] = random_corner(&mut u, 1.25, 0.8, 0.0, 0.0);
    let mut corner = SurfaceDocument::new();
    corner.push_patch("1", &r1);
    corner.push_patch("2", &r2);
    corner.push_patch("4", &r4);
    save_surface(&corner, &dir.join("corner.json"))?;

    save_surface(
        &ring_document(&random_ring(&mut u, 0.6, 1.6)),
        &dir.join("ring.json"),
    )?;

    let (a, b) = strip_documents(4, &mut u);
    save_surface(&a, &dir.join("strip_a.json"))?;
    save_surface(&b, &dir.join("strip_b.json"))?;
    println!("wrote fixtures to {}", dir.display());
    Ok(())
}
