//! Files written into temp directories for end-to-end runs.

#![allow(dead_code)]

use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

pub fn write_png(path: &Path, width: u32, height: u32, channels: u8, samples: Vec<u8>) {
    match channels {
        1 => image::GrayImage::from_raw(width, height, samples).unwrap().save(path).unwrap(),
        3 => image::RgbImage::from_raw(width, height, samples).unwrap().save(path).unwrap(),
        _ => panic!("unsupported channel count {channels}"),
    }
}

/// 16-bit mono PCM.
pub fn write_wav(path: &Path, samples: &[f64], rate: u32) {
    let spec = hound::WavSpec {
        channels: 1,
        sample_rate: rate,
        bits_per_sample: 16,
        sample_format: hound::SampleFormat::Int,
    };
    let mut w = hound::WavWriter::create(path, spec).unwrap();
    for s in samples {
        w.write_sample((s.clamp(-1.0, 1.0) * 32767.0).round() as i16).unwrap();
    }
    w.finalize().unwrap();
}

pub fn tone(freq: f64, rate: u32, len: usize, amplitude: f64) -> Vec<f64> {
    (0..len)
        .map(|n| amplitude * (2.0 * PI * freq * n as f64 / f64::from(rate)).sin())
        .collect()
}

/// A smooth RGB pattern that differs per `seed`.
pub fn pattern(width: u32, height: u32, seed: u64) -> Vec<u8> {
    let mut out = Vec::with_capacity((width * height * 3) as usize);
    for y in 0..height {
        for x in 0..width {
            let s = seed as f64;
            let v = |k: f64| (127.5 + 127.5 * ((x as f64 * (0.2 + 0.05 * k) + y as f64 * 0.13 * (k + s)).sin())) as u8;
            out.extend([v(1.0), v(2.0), v(3.0)]);
        }
    }
    out
}

pub fn add_noise(samples: &[u8], amount: u8, rng: &mut ChaCha8Rng) -> Vec<u8> {
    if amount == 0 {
        return samples.to_vec();
    }
    samples
        .iter()
        .map(|&v| (i16::from(v) + rng.gen_range(-i16::from(amount)..=i16::from(amount))).clamp(0, 255) as u8)
        .collect()
}

#[derive(Debug, Clone)]
pub struct DaySpec {
    pub day: u32,
    pub text: String,
    pub sequence: String,
    pub budget: f64,
}

impl DaySpec {
    pub fn new(day: u32, text: &str, sequence: &str, budget: f64) -> Self {
        Self {
            day,
            text: text.to_owned(),
            sequence: sequence.to_owned(),
            budget,
        }
    }
}

pub fn plan_json(days: &[DaySpec]) -> String {
    let days: Vec<_> = days
        .iter()
        .map(|d| {
            json!({
                "day": d.day,
                "day_plan_text": d.text,
                "day_plan_sequence": d.sequence,
                "day_budget_euros": d.budget,
                "image_prompt": format!("landmark of day {}", d.day),
                "audio_script": format!("summary of day {}", d.day),
            })
        })
        .collect();
    serde_json::to_string_pretty(&json!({ "trip_plan": days })).unwrap()
}

/// One pipeline of a case-study bundle. Zero noise makes the generated media
/// identical to the references.
#[derive(Debug, Clone)]
pub struct PipelineSpec {
    pub name: String,
    pub days: Vec<DaySpec>,
    pub image_noise: u8,
    pub audio_noise: f64,
}

pub const RATE: u32 = 8000;
pub const IMAGE_SIDE: u32 = 24;

/// Writes `baseline_plan.json` and one directory per pipeline.
pub fn write_bundle(root: &Path, baseline: &[DaySpec], pipelines: &[PipelineSpec]) -> PathBuf {
    fs::create_dir_all(root).unwrap();
    fs::write(root.join("baseline_plan.json"), plan_json(baseline)).unwrap();
    for (p, spec) in pipelines.iter().enumerate() {
        let dir = root.join(&spec.name);
        fs::create_dir_all(&dir).unwrap();
        fs::write(dir.join("plan.json"), plan_json(&spec.days)).unwrap();
        for d in baseline {
            let day_dir = dir.join(format!("day{}", d.day));
            fs::create_dir_all(&day_dir).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(1000 * p as u64 + u64::from(d.day));
            let reference = pattern(IMAGE_SIDE, IMAGE_SIDE, u64::from(d.day) + 7 * p as u64);
            let candidate = add_noise(&reference, spec.image_noise, &mut rng);
            write_png(&day_dir.join("reference_image.png"), IMAGE_SIDE, IMAGE_SIDE, 3, reference);
            write_png(&day_dir.join("image.png"), IMAGE_SIDE, IMAGE_SIDE, 3, candidate);
            let voice = tone(220.0 * f64::from(d.day), RATE, RATE as usize / 2, 0.5);
            let generated: Vec<f64> = voice
                .iter()
                .map(|v| v + spec.audio_noise * rng.gen_range(-1.0..=1.0))
                .collect();
            write_wav(&day_dir.join("reference_audio.wav"), &voice, RATE);
            write_wav(&day_dir.join("audio.wav"), &generated, RATE);
        }
    }
    root.to_path_buf()
}

/// Three days of a Paris-style plan used as the baseline in several tests.
pub fn baseline_days() -> Vec<DaySpec> {
    vec![
        DaySpec::new(
            1,
            "Start at the Eiffel Tower, walk along the Seine and finish with dinner in the Latin Quarter.",
            "visit(eiffel_tower), walk(seine), eat(latin_quarter)",
            120.0,
        ),
        DaySpec::new(
            2,
            "Spend the morning in the Louvre, then picnic in the Tuileries garden.",
            "visit(louvre), eat(picnic)|see(tuileries), shop(rue_de_rivoli)",
            95.5,
        ),
        DaySpec::new(
            3,
            "Climb Montmartre to the Sacre Coeur and end the trip at a cafe.",
            "see(sacre_coeur), visit(montmartre), eat(cafe)",
            80.0,
        ),
    ]
}

/// The baseline with different wording, steps and budgets.
pub fn drifted_days(variant: u32) -> Vec<DaySpec> {
    let v = f64::from(variant);
    vec![
        DaySpec::new(
            1,
            "Visit the Eiffel Tower and eat crepes near the river.",
            "visit(eiffel_tower), eat(crepes)",
            150.0 + 10.0 * v,
        ),
        DaySpec::new(
            2,
            "Museum day at the Louvre followed by shopping.",
            "visit(louvre), shop(rue_de_rivoli), eat(bistro)",
            60.0 * v,
        ),
        DaySpec::new(
            3,
            "Notre Dame, a boat tour on the Seine and a cafe.",
            "see(notre_dame), walk(seine)|visit(boat), eat(cafe)",
            90.0 + v,
        ),
    ]
}
