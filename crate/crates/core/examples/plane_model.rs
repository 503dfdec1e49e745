//! Eliminates the tower to a plane curve F(X, Z) = 0 and lists its
//! singular points.

use bielliptic::autcheck::{construct_main_family, FieldConfig, KChoice};
use bielliptic::funcfield::DVariant;
use bielliptic::plane::{eliminate_to_plane, plane_genus, plane_singularity_analysis};

fn main() -> bielliptic::Result<()> {
    let cfg = FieldConfig::standard("gf2^4:0x13", 1)?;
    let (tw, rep) = construct_main_family(8, &cfg, KChoice::Auto, DVariant::Standard)?;
    let f = eliminate_to_plane(&tw.witt.e_k)?;
    println!("F = {}", f.to_text("X", "Z"));
    println!(
        "{} terms, X-degree {}, Z-degree {}",
        f.len(),
        f.deg_x(),
        f.deg_y()
    );
    let sing = plane_singularity_analysis(&f)?;
    for p in &sing.points {
        println!("singular point {p:?}");
    }
    match plane_genus(&sing) {
        Ok(g) => println!("plane genus {g} (tower genus {})", rep.genus),
        // the delta invariant is only computed for ordinary points
        Err(e) => println!(
            "plane genus not derivable from the singularities ({e}); tower genus {}",
            rep.genus
        ),
    }
    Ok(())
}
