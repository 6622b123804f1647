//! Single-lead crops with aligned masks, plus the overlapping variant.
//!
//! A crop pairs a window of the display page with the same window of a
//! clean, target-only mask page rendered at identical geometry, so the mask
//! foreground translates pixel-for-pixel onto the page. Overlap crops use
//! the full cell band instead of the waveform-tight box, which is where
//! neighbouring leads intrude when the row height is reduced.

use alloc::string::String;
use alloc::vec::Vec;

use crate::annotate::{lead_region_bbox, BBox};
use crate::error::{Error, Result};
use crate::layout::{page_geometry, LayoutSpec, StyleSpec};
use crate::lead::LeadId;
use crate::raster::{render_mask_page, render_page, RasterImage, RenderTrace};
use crate::signal::SignalRecord;

/// A cropped single-lead sample: display crop, aligned grayscale and binary
/// masks, the signal window it shows and the overlap flag.
#[derive(Debug, Clone, PartialEq)]
pub struct LeadCrop {
    pub record_id: String,
    pub lead: LeadId,
    pub is_rhythm: bool,
    /// Crop rectangle in page coordinates.
    pub crop_rect: BBox,
    pub image: RasterImage,
    pub mask_gray: RasterImage,
    pub mask_bin: RasterImage,
    /// Time window of the cell, seconds.
    pub window_s: (f64, f64),
    pub overlap: bool,
    /// 0 mV row of this lead, page coordinates; digitization anchor.
    pub baseline_y: i64,
    /// Pixel column of the window start, page coordinates; digitization
    /// anchor.
    pub cell_left_x: i64,
}

/// Crop the display page and a mask page with one shared padded rectangle,
/// clamped at the page edges. Both inputs must share dimensions so the two
/// crops stay pixel-aligned.
pub fn crop_lead(
    page: &RasterImage,
    mask_page: &RasterImage,
    bbox: &BBox,
    pad_px: u32,
) -> Result<(RasterImage, RasterImage, BBox)> {
    if page.width() != mask_page.width() || page.height() != mask_page.height() {
        return Err(Error::InvalidArgument(
            "page and mask page must have identical dimensions",
        ));
    }
    let x0 = bbox.x_min.saturating_sub(pad_px);
    let y0 = bbox.y_min.saturating_sub(pad_px);
    let x1 = bbox.x_max.saturating_add(pad_px).min(page.width());
    let y1 = bbox.y_max.saturating_add(pad_px).min(page.height());
    if x0 >= x1 || y0 >= y1 {
        return Err(Error::InvalidCrop);
    }
    let rect = BBox {
        x_min: x0,
        y_min: y0,
        x_max: x1,
        y_max: y1,
    };
    Ok((
        page.crop(x0, y0, x1, y1),
        mask_page.crop(x0, y0, x1, y1),
        rect,
    ))
}

/// Convert a two-tone grayscale mask (0 foreground, 255 background) to a
/// binary mask with foreground 1 and background 0.
pub fn binarize_mask(mask_gray: &RasterImage) -> Result<RasterImage> {
    if mask_gray.channels() != 1 {
        return Err(Error::InvalidArgument("mask must be grayscale"));
    }
    let mut out = RasterImage::new_gray(mask_gray.width(), mask_gray.height(), 0);
    for y in 0..mask_gray.height() {
        for x in 0..mask_gray.width() {
            match mask_gray.get_gray(x, y) {
                0 => {
                    out.put(x as i64, y as i64, &[1]);
                }
                255 => {}
                other => return Err(Error::NotTwoTone(other)),
            }
        }
    }
    Ok(out)
}

/// True iff any waveform pixel of a lead other than `target` falls inside
/// `crop_rect`. Another instance of the target lead (the rhythm strip) does
/// not count as foreign.
pub fn classify_overlap(trace: &RenderTrace, target: LeadId, crop_rect: &BBox) -> bool {
    trace
        .entries
        .iter()
        .filter(|e| e.lead != target)
        .any(|e| {
            e.waveform_pixels
                .iter()
                .any(|(x, y)| crop_rect.contains(*x, *y))
        })
}

fn build_crop(
    record: &SignalRecord,
    page: &RasterImage,
    trace: &RenderTrace,
    mask_page: &RasterImage,
    cell: &crate::layout::CellGeom,
    bbox: &BBox,
    pad_px: u32,
) -> Result<LeadCrop> {
    let (image, mask_gray, rect) = crop_lead(page, mask_page, bbox, pad_px)?;
    let mask_bin = binarize_mask(&mask_gray)?;
    let overlap = classify_overlap(trace, cell.lead, &rect);
    Ok(LeadCrop {
        record_id: String::from(record.record_id()),
        lead: cell.lead,
        is_rhythm: cell.is_rhythm,
        crop_rect: rect,
        image,
        mask_gray,
        mask_bin,
        window_s: (cell.t0, cell.t1),
        overlap,
        baseline_y: cell.baseline_y,
        cell_left_x: cell.rect.x0,
    })
}

/// Produce one crop per rendered lead instance using waveform-tight boxes.
/// The mask for each crop comes from a target-only render, so it never
/// contains another lead's pixels.
pub fn segment_crops(
    record: &SignalRecord,
    layout: &LayoutSpec,
    style: &StyleSpec,
    pad_px: u32,
) -> Result<Vec<LeadCrop>> {
    crops_inner(record, layout, style, pad_px, false)
}

/// Produce one crop per rendered lead instance using the full cell band as
/// the crop rectangle. With a reduced row height this is the overlapping
/// dataset: neighbours intrude into the image while masks stay clean.
pub fn overlap_crops(
    record: &SignalRecord,
    layout: &LayoutSpec,
    style: &StyleSpec,
    pad_px: u32,
) -> Result<Vec<LeadCrop>> {
    crops_inner(record, layout, style, pad_px, true)
}

fn crops_inner(
    record: &SignalRecord,
    layout: &LayoutSpec,
    style: &StyleSpec,
    pad_px: u32,
    band_crop: bool,
) -> Result<Vec<LeadCrop>> {
    let geom = page_geometry(layout);
    let (page, trace) = render_page(record, layout, style)?;
    debug_assert_eq!(geom.cells.len(), trace.entries.len());

    // One clean mask render per distinct lead on the page.
    let mut masks: [Option<RasterImage>; 12] = Default::default();
    let mut crops = Vec::with_capacity(geom.cells.len());
    for (cell, entry) in geom.cells.iter().zip(trace.entries.iter()) {
        debug_assert_eq!(cell.lead, entry.lead);
        let mask_slot = &mut masks[cell.lead.index()];
        if mask_slot.is_none() {
            let (mask, _) =
                render_mask_page(record, layout, Some(cell.lead), style.line_thickness_px)?;
            *mask_slot = Some(mask);
        }
        let mask_page = mask_slot.as_ref().unwrap();

        let bbox = if band_crop {
            BBox::from_px_rect(&cell.rect, trace.width, trace.height)?
        } else {
            lead_region_bbox(entry, 0, trace.width, trace.height)?
        };
        crops.push(build_crop(
            record, &page, &trace, mask_page, cell, &bbox, pad_px,
        )?);
    }
    Ok(crops)
}

/// Build the overlap-dataset sample for one target lead: the image crop
/// comes from the full multi-lead page (neighbours may intrude), the mask
/// from a target-only render, both cut with the target's padded cell band.
pub fn make_overlap_sample(
    record: &SignalRecord,
    layout: &LayoutSpec,
    style: &StyleSpec,
    target: LeadId,
    pad_px: u32,
) -> Result<LeadCrop> {
    let geom = page_geometry(layout);
    let cell = geom
        .cells
        .iter()
        .find(|c| c.lead == target && !c.is_rhythm)
        .ok_or(Error::InvalidArgument("target lead is not on this layout"))?;
    let (page, trace) = render_page(record, layout, style)?;
    let (mask_page, _) = render_mask_page(record, layout, Some(target), style.line_thickness_px)?;
    let bbox = BBox::from_px_rect(&cell.rect, trace.width, trace.height)?;
    build_crop(record, &page, &trace, &mask_page, cell, &bbox, pad_px)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::{
        make_layout, Calibration, LayoutKind, DEFAULT_ROW_HEIGHT_BOXES, OVERLAP_ROW_HEIGHT_BOXES,
    };
    use crate::signal::synth_record;
    use std::collections::BTreeSet;

    fn style() -> StyleSpec {
        StyleSpec::default()
    }

    fn twelve_by_one(row_height: f64) -> LayoutSpec {
        make_layout(LayoutKind::TwelveByOne, Calibration::default(), row_height, false).unwrap()
    }

    /// All-zero record except two adjacent leads carrying opposing 2 mV
    /// square pulses, which bleed into each other's bands at reduced row
    /// height.
    fn pulse_record() -> SignalRecord {
        let n = 5000;
        let mut leads: [Vec<f64>; 12] = core::array::from_fn(|_| alloc::vec![0.0; n]);
        for k in 1000..1500 {
            leads[LeadId::II.index()][k] = -2.0;
            leads[LeadId::III.index()][k] = 2.0;
        }
        SignalRecord::new("pulse", 500.0, leads).unwrap()
    }

    fn zero_record() -> SignalRecord {
        let leads = core::array::from_fn(|_| alloc::vec![0.0; 5000]);
        SignalRecord::new("zero", 500.0, leads).unwrap()
    }

    #[test]
    fn binarize_maps_tones() {
        let mut gray = RasterImage::new_gray(4, 2, 255);
        gray.put(2, 1, &[0]);
        let bin = binarize_mask(&gray).unwrap();
        let total: u32 = bin.pixels().iter().map(|v| *v as u32).sum();
        assert_eq!(total, 1);
        assert_eq!(bin.get_gray(2, 1), 1);
        assert!(bin.pixels().iter().all(|v| *v <= 1));

        let all_bg = RasterImage::new_gray(3, 3, 255);
        let bin = binarize_mask(&all_bg).unwrap();
        assert!(bin.pixels().iter().all(|v| *v == 0));
    }

    #[test]
    fn binarize_rejects_other_values() {
        let mut gray = RasterImage::new_gray(2, 2, 255);
        gray.put(0, 0, &[128]);
        assert_eq!(binarize_mask(&gray), Err(Error::NotTwoTone(128)));
    }

    #[test]
    fn crop_of_background_region_is_uniform() {
        let record = zero_record();
        let layout = twelve_by_one(DEFAULT_ROW_HEIGHT_BOXES);
        let (mask, _) = render_mask_page(&record, &layout, Some(LeadId::V6), 1).unwrap();
        // Lead I's band contains no V6 pixels.
        let bbox = BBox { x_min: 40, y_min: 30, x_max: 140, y_max: 80 };
        let (_, crop, _) = crop_lead(&mask, &mask, &bbox, 0).unwrap();
        assert!(crop.pixels().iter().all(|v| *v == 255));
    }

    #[test]
    fn full_page_crop_is_identity() {
        let record = synth_record(1, 10.0, 500.0).unwrap();
        let layout = twelve_by_one(DEFAULT_ROW_HEIGHT_BOXES);
        let (page, _) = render_page(&record, &layout, &style()).unwrap();
        let bbox = BBox { x_min: 0, y_min: 0, x_max: page.width(), y_max: page.height() };
        let (crop, _, rect) = crop_lead(&page, &page.clone(), &bbox, 0).unwrap();
        assert_eq!(rect, bbox);
        assert_eq!(crop.pixels(), page.pixels());
    }

    #[test]
    fn crop_alignment_matches_trace() {
        // Mask-crop foreground equals the target lead's traced pixels
        // intersected with the crop rect, translated to crop coordinates.
        let record = synth_record(19, 10.0, 500.0).unwrap();
        let layout = twelve_by_one(DEFAULT_ROW_HEIGHT_BOXES);
        let (_, trace) = render_page(&record, &layout, &style()).unwrap();
        for crop in segment_crops(&record, &layout, &style(), 2).unwrap() {
            let rect = crop.crop_rect;
            let expected: BTreeSet<(u32, u32)> = trace
                .lead_pixels(crop.lead)
                .into_iter()
                .filter(|(x, y)| rect.contains(*x, *y))
                .map(|(x, y)| (x - rect.x_min, y - rect.y_min))
                .collect();
            let mut actual = BTreeSet::new();
            for y in 0..crop.mask_bin.height() {
                for x in 0..crop.mask_bin.width() {
                    if crop.mask_bin.get_gray(x, y) == 1 {
                        actual.insert((x, y));
                    }
                }
            }
            assert_eq!(expected, actual, "lead {}", crop.lead);
            assert!(!crop.overlap);
        }
    }

    #[test]
    fn zero_record_never_overlaps() {
        let record = zero_record();
        let layout = twelve_by_one(DEFAULT_ROW_HEIGHT_BOXES);
        let (_, trace) = render_page(&record, &layout, &style()).unwrap();
        let geom = page_geometry(&layout);
        for cell in &geom.cells {
            let rect = BBox::from_px_rect(&cell.rect, trace.width, trace.height).unwrap();
            assert!(!classify_overlap(&trace, cell.lead, &rect));
        }
    }

    #[test]
    fn pulse_fixture_overlaps_both_ways_at_reduced_height() {
        let record = pulse_record();
        let layout = twelve_by_one(OVERLAP_ROW_HEIGHT_BOXES);
        for target in [LeadId::II, LeadId::III] {
            let sample = make_overlap_sample(&record, &layout, &style(), target, 2).unwrap();
            assert!(sample.overlap, "{target} crop should see its neighbour");
        }
        // A lead far away from the pulses sees nothing foreign.
        let far = make_overlap_sample(&record, &layout, &style(), LeadId::V5, 2).unwrap();
        assert!(!far.overlap);
    }

    #[test]
    fn overlap_masks_stay_clean() {
        let record = pulse_record();
        let layout = twelve_by_one(OVERLAP_ROW_HEIGHT_BOXES);
        let (_, trace) = render_page(&record, &layout, &style()).unwrap();
        for crop in overlap_crops(&record, &layout, &style(), 2).unwrap() {
            let rect = crop.crop_rect;
            let target_set: BTreeSet<(u32, u32)> =
                trace.lead_pixels(crop.lead).into_iter().collect();
            // No pixel of any other lead is foreground in the mask unless
            // the target painted the same pixel.
            for entry in trace.entries.iter().filter(|e| e.lead != crop.lead) {
                for (x, y) in &entry.waveform_pixels {
                    if rect.contains(*x, *y) {
                        let cx = x - rect.x_min;
                        let cy = y - rect.y_min;
                        if crop.mask_bin.get_gray(cx, cy) == 1 {
                            assert!(
                                target_set.contains(&(*x, *y)),
                                "foreign pixel marked foreground"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn no_overlap_crops_match_mask_foreground() {
        // Without bleed-over and with grid/names off, the image's dark
        // pixels inside a band crop are exactly the mask foreground.
        let record = zero_record();
        let layout = twelve_by_one(DEFAULT_ROW_HEIGHT_BOXES);
        let bare = StyleSpec {
            show_grid: false,
            show_lead_names: false,
            show_separators: false,
            ..StyleSpec::default()
        };
        for crop in overlap_crops(&record, &layout, &bare, 2).unwrap() {
            assert!(!crop.overlap);
            let gray = crop.image.to_gray();
            for y in 0..gray.height() {
                for x in 0..gray.width() {
                    assert_eq!(gray.get_gray(x, y) == 0, crop.mask_bin.get_gray(x, y) == 1);
                }
            }
        }
    }

    #[test]
    fn mask_values_are_binary_everywhere() {
        let record = synth_record(8, 10.0, 500.0).unwrap();
        let layout = twelve_by_one(OVERLAP_ROW_HEIGHT_BOXES);
        for crop in overlap_crops(&record, &layout, &style(), 2).unwrap() {
            assert!(crop.mask_gray.pixels().iter().all(|v| *v == 0 || *v == 255));
            assert!(crop.mask_bin.pixels().iter().all(|v| *v <= 1));
        }
    }
}
