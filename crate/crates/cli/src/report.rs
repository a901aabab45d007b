use gridclass::{Cell, Chirality, CycleDescriptor, GriddedPerm, GriddingMatrix, MatrixClass};
use serde_json::{json, Value};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NON_MEMBER: u8 = 1;
pub const EXIT_ERROR: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;
pub const EXIT_NOT_LWQO: u8 = 10;

#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub inputs: Value,
    pub result: Value,
    pub witnesses: Value,
    pub text: Vec<String>,
    pub exit: u8,
}

impl Report {
    pub fn new(command: &'static str, inputs: Value) -> Self {
        Report { command, inputs, result: json!({}), witnesses: json!({}), text: Vec::new(), exit: EXIT_OK }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    pub fn to_json(&self, elapsed_ms: f64) -> Value {
        json!({
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "witnesses": self.witnesses,
            "timing": { "elapsed_ms": elapsed_ms },
        })
    }
}

pub fn cell(c: Cell) -> Value {
    json!([c.col + 1, c.row + 1])
}

pub fn cells(cs: &[Cell]) -> Value {
    Value::Array(cs.iter().map(|&c| cell(c)).collect())
}

pub fn cell_text(c: Cell) -> String {
    format!("({},{})", c.col + 1, c.row + 1)
}

pub fn cells_text(cs: &[Cell]) -> String {
    cs.iter().map(|&c| cell_text(c)).collect::<Vec<_>>().join(" ")
}

pub fn cuts_text(g: &GriddedPerm) -> String {
    let (v, h) = g.cuts();
    let list = |xs: &[usize]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    format!("v:{};h:{}", list(&v), list(&h))
}

pub fn gridded(g: &GriddedPerm) -> Value {
    json!({ "perm": g.perm().to_string(), "gridding": cuts_text(g), "cells": cells(g.cells()) })
}

pub fn gridded_text(g: &GriddedPerm) -> String {
    format!("{}  {}  {}", g.perm(), cuts_text(g), cells_text(g.cells()))
}

/// Rows top-down separated by `/`, the inline matrix form.
pub fn matrix_inline(m: &GriddingMatrix) -> String {
    m.to_string().lines().map(|l| l.split_whitespace().collect::<Vec<_>>().join(" ")).collect::<Vec<_>>().join(" / ")
}

pub fn class_name(c: MatrixClass) -> &'static str {
    match c {
        MatrixClass::Acyclic => "acyclic",
        MatrixClass::Cyclic => "cyclic",
        MatrixClass::Unicyclic => "unicyclic",
        MatrixClass::Pseudoforest => "pseudoforest",
        MatrixClass::Polycyclic => "polycyclic",
    }
}

pub fn chirality_name(c: Chirality) -> &'static str {
    match c {
        Chirality::A => "A",
        Chirality::B => "B",
    }
}

pub fn cycle(c: &CycleDescriptor) -> Value {
    json!({ "cells": cells(&c.cells), "sign": c.sign })
}

pub fn one_based(xs: &[usize]) -> Vec<usize> {
    xs.iter().map(|x| x + 1).collect()
}
