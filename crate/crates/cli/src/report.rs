//! Rendering of each command's report in the three output formats.

use std::fmt::Write;

use cellmac_core::cm::{cm_report, CMReport};
use cellmac_core::free::minimal_free_resolution;
use cellmac_core::hexagon::{hexagon_report, HexagonReport};
use cellmac_core::homology::{enriched_cohomology_table, enriched_homology_table, reduced_homology_dims};
use cellmac_core::sqfree::{k_i_module, SqModComplex};
use cellmac_core::table::{simplicial_table, TableRow};
use cellmac_core::{CellComplex, Field, GradedPieceTable, Result};
use serde::Serialize;

use crate::Format;

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn header(field: Field, format: Format) -> String {
    match format {
        Format::Tsv => format!("# field\t{field}\n"),
        _ => format!("field: {field}\n"),
    }
}

fn text_header(complex: &CellComplex, field: Field) -> String {
    format!("{}vertices: {}\n", header(field, Format::Text), complex.vertex_names().join(" "))
}

/// One line per level: `level: bits=dim ...`.
fn table_text(out: &mut String, indent: &str, t: &GradedPieceTable) {
    if t.is_zero() {
        let _ = writeln!(out, "{indent}(zero)");
        return;
    }
    let n = t.vertex_count();
    for i in t.degrees() {
        let cells: Vec<String> =
            t.iter().filter(|e| e.0 == i).map(|(_, s, d)| format!("{}={d}", s.bitstring(n))).collect();
        let _ = writeln!(out, "{indent}{i:>3}: {}", cells.join(" "));
    }
}

fn tsv_rows(out: &mut String, prefix: &str, t: &GradedPieceTable) {
    for line in t.to_tsv().lines() {
        let _ = writeln!(out, "{prefix}\t{line}");
    }
}

#[derive(Serialize)]
struct ValidateReport {
    field: String,
    ok: bool,
    cells: usize,
    dim: i32,
    #[serde(rename = "fVector")]
    f_vector: Vec<usize>,
}

pub fn validate(complex: &CellComplex, field: Field, format: Format) -> String {
    let r = ValidateReport {
        field: field.id(),
        ok: true,
        cells: complex.cell_count(),
        dim: complex.dim(),
        f_vector: complex.f_vector(),
    };
    match format {
        Format::Json => json(&r),
        Format::Tsv => {
            let mut out = header(field, format);
            let _ = writeln!(out, "cells\t{}\ndim\t{}", r.cells, r.dim);
            for (d, c) in r.f_vector.iter().enumerate() {
                let _ = writeln!(out, "f\t{}\t{c}", d as i32 - 1);
            }
            out
        }
        Format::Text => format!("{}ok, {} cells\n", header(field, format), r.cells),
    }
}

pub fn cm(complex: &CellComplex, field: Field, format: Format) -> String {
    let r: CMReport = cm_report(complex, field);
    match format {
        Format::Json => json(&r),
        Format::Tsv => {
            let mut out = header(field, format);
            let _ = writeln!(out, "dim\t{}", r.dim);
            let _ = writeln!(out, "isCM\t{}", r.is_cm);
            let _ = writeln!(out, "lcmOrder\t{}", r.lcm_order);
            let _ = writeln!(out, "gorensteinStar\t{}", r.gorenstein_star);
            let _ = writeln!(out, "topCohomologyRank\t{}", r.top_cohomology_rank);
            for w in &r.witnesses {
                let _ = writeln!(out, "witness\t{}\t{}", w.p, w.vertices.join(","));
            }
            out
        }
        Format::Text => {
            let mut out = text_header(complex, field);
            let _ = writeln!(out, "dim: {}", r.dim);
            let _ = writeln!(out, "Cohen-Macaulay: {}", r.is_cm);
            let _ = writeln!(out, "l-CM order: {}", r.lcm_order);
            let _ = writeln!(out, "Gorenstein*: {}", r.gorenstein_star);
            let _ = writeln!(out, "top homology rank: {}", r.top_cohomology_rank);
            for w in &r.witnesses {
                let _ = writeln!(out, "witness: H~_{} of deletion of {{{}}}", w.p, w.vertices.join(","));
            }
            out
        }
    }
}

#[derive(Serialize)]
struct HomologyReport {
    field: String,
    n: usize,
    #[serde(rename = "reducedHomology")]
    reduced_homology: Vec<usize>,
    #[serde(rename = "enrichedHomology")]
    enriched_homology: GradedPieceTable,
    #[serde(rename = "enrichedCohomology")]
    enriched_cohomology: GradedPieceTable,
}

pub fn homology(complex: &CellComplex, field: Field, format: Format) -> String {
    let r = HomologyReport {
        field: field.id(),
        n: complex.vertex_count(),
        reduced_homology: reduced_homology_dims(complex, field).dims_from_minus_one().to_vec(),
        enriched_homology: enriched_homology_table(complex, field),
        enriched_cohomology: enriched_cohomology_table(complex, field),
    };
    match format {
        Format::Json => json(&r),
        Format::Tsv => {
            let mut out = header(field, format);
            for (p, d) in r.reduced_homology.iter().enumerate() {
                let _ = writeln!(out, "reduced\t{}\t{d}", p as i32 - 1);
            }
            tsv_rows(&mut out, "homology", &r.enriched_homology);
            tsv_rows(&mut out, "cohomology", &r.enriched_cohomology);
            out
        }
        Format::Text => {
            let mut out = text_header(complex, field);
            let dims: Vec<String> = r.reduced_homology.iter().map(|d| d.to_string()).collect();
            let _ = writeln!(out, "reduced homology from degree -1: [{}]", dims.join(", "));
            out.push_str("enriched homology (degree i, subset R: dim H~_i of the restriction to R):\n");
            table_text(&mut out, "  ", &r.enriched_homology);
            out.push_str("enriched cohomology:\n");
            table_text(&mut out, "  ", &r.enriched_cohomology);
            out
        }
    }
}

pub fn hexagon(complex: &CellComplex, field: Field, format: Format) -> String {
    let r: HexagonReport = hexagon_report(complex, field);
    match format {
        Format::Json => json(&r),
        Format::Tsv => {
            let mut out = header(field, format);
            let _ = writeln!(out, "# identity\t{}", r.identity.holds());
            let _ = writeln!(out, "# kiTheorem\t{}", r.ki_theorem);
            for s in &r.strand_duality {
                let _ = writeln!(out, "# strandDuality\t{}\t{}\t{}", s.p, s.q, s.holds);
            }
            for c in &r.corners {
                tsv_rows(&mut out, &format!("{}\tbetti", c.name), &c.betti);
                tsv_rows(&mut out, &format!("{}\thomology", c.name), &c.homology);
            }
            for (i, t) in &r.k_modules {
                tsv_rows(&mut out, &format!("k^{i}\tdims"), t);
            }
            out
        }
        Format::Text => {
            let mut out = text_header(complex, field);
            let _ = writeln!(
                out,
                "hexagon identity: betti {}, homology {}",
                r.identity.betti, r.identity.homology
            );
            let _ = writeln!(out, "H^-i(F^v) = k^i: {}", r.ki_theorem);
            for s in &r.strand_duality {
                let _ = writeln!(out, "strand duality {} / {}: {}", s.p, s.q, s.holds);
            }
            let l = r.linearity;
            let _ = writeln!(out, "linear: E[-1] {}, G {}, F {}", l.e, l.g, l.f);
            for c in &r.corners {
                let _ = writeln!(out, "{} betti:", c.name);
                table_text(&mut out, "  ", &c.betti);
                let _ = writeln!(out, "{} homology:", c.name);
                table_text(&mut out, "  ", &c.homology);
            }
            for (i, t) in &r.k_modules {
                let _ = writeln!(out, "k^{i}:");
                table_text(&mut out, "  ", t);
            }
            out
        }
    }
}

#[derive(Serialize)]
struct Resolution {
    i: i32,
    dims: GradedPieceTable,
    betti: GradedPieceTable,
}

#[derive(Serialize)]
struct ResolveReport {
    field: String,
    n: usize,
    resolutions: Vec<Resolution>,
}

pub fn resolve(complex: &CellComplex, field: Field, format: Format) -> String {
    let n = complex.vertex_count();
    let resolutions = (0..=n as i32)
        .filter_map(|i| {
            let m = k_i_module(complex, i, field);
            if m.is_zero() {
                return None;
            }
            let betti = minimal_free_resolution(&SqModComplex::single(m.clone(), 0)).betti_table();
            Some(Resolution { i, dims: m.dimension_table(), betti })
        })
        .collect();
    let r = ResolveReport { field: field.id(), n, resolutions };
    match format {
        Format::Json => json(&r),
        Format::Tsv => {
            let mut out = header(field, format);
            for res in &r.resolutions {
                tsv_rows(&mut out, &res.i.to_string(), &res.betti);
            }
            out
        }
        Format::Text => {
            let mut out = text_header(complex, field);
            for res in &r.resolutions {
                let _ = writeln!(out, "k^{} betti (level, degree):", res.i);
                table_text(&mut out, "  ", &res.betti);
            }
            out
        }
    }
}

#[derive(Serialize)]
struct TableEntry<'a> {
    #[serde(rename = "match")]
    matches: bool,
    #[serde(flatten)]
    row: &'a TableRow,
}

#[derive(Serialize)]
struct TableReport<'a> {
    field: String,
    n: usize,
    #[serde(rename = "allMatch")]
    all_match: bool,
    rows: Vec<TableEntry<'a>>,
}

pub fn table(complex: &CellComplex, field: Field, format: Format) -> Result<String> {
    let rows = simplicial_table(complex, field)?;
    let r = TableReport {
        field: field.id(),
        n: complex.vertex_count(),
        all_match: rows.iter().all(TableRow::matches),
        rows: rows.iter().map(|row| TableEntry { matches: row.matches(), row }).collect(),
    };
    Ok(match format {
        Format::Json => json(&r),
        Format::Tsv => {
            let mut out = header(field, format);
            for e in &r.rows {
                let c = e.row.corner;
                let _ = writeln!(out, "# match\t{c}\t{}", e.matches);
                tsv_rows(&mut out, &format!("{c}\tbetti"), &e.row.betti);
                tsv_rows(&mut out, &format!("{c}\tbettiOracle"), &e.row.betti_oracle);
                tsv_rows(&mut out, &format!("{c}\thomology"), &e.row.homology);
                tsv_rows(&mut out, &format!("{c}\thomologyOracle"), &e.row.homology_oracle);
            }
            out
        }
        Format::Text => {
            let mut out = text_header(complex, field);
            for e in &r.rows {
                let row = e.row;
                let _ = writeln!(
                    out,
                    "{:<8} betti {}  homology {}",
                    row.corner,
                    verdict(row.betti == row.betti_oracle),
                    verdict(row.homology == row.homology_oracle)
                );
            }
            let _ = writeln!(out, "all rows match: {}", r.all_match);
            out
        }
    })
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "match"
    } else {
        "MISMATCH"
    }
}
