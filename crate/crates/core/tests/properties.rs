//! Property tests for the pure coordinate and label math.

use proptest::prelude::*;

use ecgforge_core::layout::{make_layout, page_geometry, px_to_signal, Calibration, LayoutKind};
use ecgforge_core::{signal_to_px, synth_record, to_yolo, BBox, YoloAnnotation};

proptest! {
    #[test]
    fn yolo_round_trip_recovers_the_box(
        img_w in 64u32..4096,
        img_h in 64u32..4096,
        x0 in 0u32..4000,
        y0 in 0u32..4000,
        w in 1u32..512,
        h in 1u32..512,
        class in 0u8..=12,
    ) {
        prop_assume!(x0 + w <= img_w && y0 + h <= img_h);
        let bbox = BBox { x_min: x0, y_min: y0, x_max: x0 + w, y_max: y0 + h };
        let label = to_yolo(&bbox, class, img_w, img_h).unwrap();

        // The emitted text parses back to the same annotation at 6 decimals.
        let parsed = YoloAnnotation::parse_line(&label.to_line()).unwrap();
        prop_assert_eq!(parsed.class, class);
        prop_assert!((parsed.x - label.x).abs() <= 5e-7);
        prop_assert!((parsed.y - label.y).abs() <= 5e-7);
        prop_assert!((parsed.w - label.w).abs() <= 5e-7);
        prop_assert!((parsed.h - label.h).abs() <= 5e-7);

        // Normalization invariants.
        prop_assert!(label.x - label.w / 2.0 >= -1e-12);
        prop_assert!(label.x + label.w / 2.0 <= 1.0 + 1e-12);
        prop_assert!(label.y - label.h / 2.0 >= -1e-12);
        prop_assert!(label.y + label.h / 2.0 <= 1.0 + 1e-12);

        // Denormalizing the parsed line lands within a pixel of the source.
        let (bx0, by0, bx1, by1) = parsed.denormalize(img_w, img_h);
        prop_assert!((bx0 - x0 as f64).abs() < 1.0);
        prop_assert!((by0 - y0 as f64).abs() < 1.0);
        prop_assert!((bx1 - (x0 + w) as f64).abs() < 1.0);
        prop_assert!((by1 - (y0 + h) as f64).abs() < 1.0);
    }

    #[test]
    fn pixel_mapping_round_trips_within_half_pixel(
        t_frac in 0.0f64..1.0,
        v in -3.0f64..3.0,
        cell_index in 0usize..12,
    ) {
        let layout = make_layout(
            LayoutKind::TwelveByOne,
            Calibration::default(),
            6.0,
            false,
        ).unwrap();
        let geom = page_geometry(&layout);
        let cell = &geom.cells[cell_index];
        // Stay strictly inside the half-open window.
        let t = cell.t0 + t_frac * (cell.t1 - cell.t0) * 0.999;
        let (x, y) = signal_to_px(t, v, cell, &layout.calibration).unwrap();
        let (t2, v2) = px_to_signal(x, y, cell, &layout.calibration);
        prop_assert!((t2 - t).abs() <= 0.5 / layout.calibration.scale_x() + 1e-12);
        prop_assert!((v2 - v).abs() <= 0.5 / layout.calibration.scale_y() + 1e-12);
    }

    #[test]
    fn affine_mapping_in_time_and_voltage(
        dv in 0.01f64..1.0,
        dt in 0.01f64..1.0,
    ) {
        let layout = make_layout(
            LayoutKind::TwelveByOne,
            Calibration::default(),
            6.0,
            false,
        ).unwrap();
        let geom = page_geometry(&layout);
        let cell = &geom.cells[0];
        let calib = &layout.calibration;
        // Compare rounded steps against the exact affine displacement.
        let (x_a, y_a) = signal_to_px(1.0, 0.0, cell, calib).unwrap();
        let (x_b, y_b) = signal_to_px(1.0 + dt, dv, cell, calib).unwrap();
        let exact_dx = dt * calib.scale_x();
        let exact_dy = dv * calib.scale_y();
        prop_assert!(((x_b - x_a) as f64 - exact_dx).abs() <= 1.0);
        prop_assert!(((y_a - y_b) as f64 - exact_dy).abs() <= 1.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn synth_record_is_a_pure_function_of_its_inputs(
        seed in 0u64..1000,
        duration_decis in 5u32..30,
        fs in prop::sample::select(vec![100.0f64, 250.0, 500.0]),
    ) {
        let duration = duration_decis as f64 / 2.0;
        let a = synth_record(seed, duration, fs).unwrap();
        let b = synth_record(seed, duration, fs).unwrap();
        prop_assert_eq!(a, b);
    }
}
