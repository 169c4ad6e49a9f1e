//! Embedded 4x4/3x4 example channel pairs with known difference-Gram spectra:
//! one with a positive definite difference, one indefinite.

use crate::channel::ChannelPair;
use crate::io::ChannelFile;

/// Names accepted by the fixture lookup.
pub const FIXTURE_NAMES: [&str; 2] = ["paper_ex1", "paper_ex2"];

const EX1_H_R: [[(f64, f64); 4]; 4] = [
    [(-0.1107, -0.1225), (0.0582, -0.3483), (0.3239, -0.0071), (-0.2872, -0.2655)],
    [(0.5128, -0.3239), (-0.8903, -0.0318), (-0.5524, -0.0365), (-0.2072, 0.3047)],
    [(-0.0041, 0.0265), (0.0871, -0.0253), (0.0183, 1.1679), (-0.0784, 0.0415)],
    [(-0.4699, -0.1014), (-0.0888, 0.1127), (0.2099, 0.3282), (0.1734, -0.4146)],
];

const EX1_H_E: [[(f64, f64); 4]; 3] = [
    [(-0.0766, 0.1370), (-0.0977, -0.0985), (0.0002, -0.0695), (0.0583, 0.0356)],
    [(-0.0355, -0.1167), (0.1607, -0.1091), (-0.0809, 0.1481), (-0.0218, 0.1109)],
    [(0.1375, -0.0381), (-0.0845, -0.0610), (-0.0011, 0.1129), (-0.0393, 0.1124)],
];

const EX2_H_R: [[(f64, f64); 4]; 4] = [
    [(-0.1110, -0.0667), (-0.1937, -0.1349), (-0.0752, -0.2707), (-0.2718, 0.2730)],
    [(0.2877, 0.6779), (-0.7832, -0.2249), (0.4350, 0.2637), (0.4160, 0.5109)],
    [(0.3266, -0.2779), (-0.2345, -0.4472), (0.2448, 0.3488), (-0.6794, -0.0117)],
    [(-0.1221, 0.4915), (0.0959, -0.2557), (-0.0219, 0.5077), (0.1449, 0.3294)],
];

const EX2_H_E: [[(f64, f64); 4]; 3] = [
    [(0.1468, -0.1185), (0.4071, 0.4469), (0.2474, -0.3291), (-0.6264, -0.1313)],
    [(-0.0520, 0.2917), (-0.4978, 0.0545), (0.0779, -0.3472), (-0.0132, -0.1327)],
    [(0.5799, -0.1767), (0.2298, 0.3331), (-0.1151, -0.2000), (0.1404, -0.3501)],
];

fn to_rows<const C: usize>(rows: &[[(f64, f64); C]]) -> Vec<[f64; 2]> {
    rows.iter()
        .flat_map(|row| row.iter().map(|&(re, im)| [re, im]))
        .collect()
}

/// Fixture as a serializable channel file, or `None` for an unknown name.
pub fn channel_file(name: &str) -> Option<ChannelFile> {
    let (h_r, h_e) = match name {
        "paper_ex1" => (to_rows(&EX1_H_R), to_rows(&EX1_H_E)),
        "paper_ex2" => (to_rows(&EX2_H_R), to_rows(&EX2_H_E)),
        _ => return None,
    };
    Some(ChannelFile {
        n_t: 4,
        n_r: 4,
        n_e: 3,
        h_r,
        h_e,
        snr_db: Some(8.0),
        normalize: Some(false),
    })
}

/// Fixture as a ready-to-use channel pair.
pub fn channel_pair(name: &str) -> Option<ChannelPair> {
    channel_file(name).map(|f| f.to_channel_pair().expect("fixtures are valid"))
}
