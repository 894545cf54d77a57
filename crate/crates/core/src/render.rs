//! Deterministic text, JSON and DOT rendering, plus JSON input for
//! characters.  All output is byte-stable across runs: iteration follows
//! sorted containers and fixed child order throughout.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lie::{AlgebraSpec, Weight};
use crate::rect::{RectNode, RectTree};
use crate::ring::Character;
use crate::tree::{DecompositionTree, TreeNode};

#[derive(Error, Debug)]
pub enum RenderError {
    #[error("multiplicity {0} exceeds the JSON integer range")]
    MultTooLarge(BigInt),
    #[error("bad character JSON: {0}")]
    BadCharacterJson(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Lie(#[from] crate::lie::LieError),
}

fn mult_i64(m: &BigInt) -> Result<i64, RenderError> {
    m.to_i64().ok_or_else(|| RenderError::MultTooLarge(m.clone()))
}

fn join(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// One line per node in depth-first order: `⊕(level) mult·V[omega coords]`.
pub fn tree_text(tree: &DecompositionTree) -> String {
    let mut out = String::new();
    tree.root.walk(&mut |node| {
        out.push_str(&format!(
            "⊕({}) {}·V[{}]\n",
            node.level(),
            node.multiplicity,
            join(&node.highest_weight.0)
        ));
    });
    out
}

#[derive(Serialize)]
struct TreeJson {
    algebra: String,
    factors: Vec<FactorJson>,
    root: TreeNodeJson,
}

#[derive(Serialize)]
struct FactorJson {
    node: usize,
    m: i64,
}

#[derive(Serialize)]
struct TreeNodeJson {
    level: usize,
    label: Vec<Vec<i64>>,
    weight: Vec<i64>,
    mult: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta: Option<Vec<i64>>,
    children: Vec<TreeNodeJson>,
}

fn tree_node_json(node: &TreeNode) -> Result<TreeNodeJson, RenderError> {
    Ok(TreeNodeJson {
        level: node.level(),
        label: node.label.ds.iter().map(|d| d.0.clone()).collect(),
        weight: node.highest_weight.0.clone(),
        mult: mult_i64(&node.multiplicity)?,
        delta: node.delta().map(|d| d.0),
        children: node
            .children
            .iter()
            .map(tree_node_json)
            .collect::<Result<_, _>>()?,
    })
}

pub fn tree_json(tree: &DecompositionTree) -> Result<String, RenderError> {
    let doc = TreeJson {
        algebra: tree.spec.name(),
        factors: tree
            .factors
            .factors
            .iter()
            .map(|f| FactorJson { node: f.node, m: f.m })
            .collect(),
        root: tree_node_json(&tree.root)?,
    };
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}

/// One graph node per tree node; edge labels carry the increment in alpha
/// coordinates.
pub fn tree_dot(tree: &DecompositionTree) -> String {
    let mut out = String::from("digraph decomposition {\n");
    let mut counter = 0usize;
    fn emit(node: &TreeNode, id: usize, counter: &mut usize, out: &mut String) {
        out.push_str(&format!(
            "  n{} [label=\"{}·V[{}]\"];\n",
            id,
            node.multiplicity,
            join(&node.highest_weight.0)
        ));
        for child in &node.children {
            *counter += 1;
            let cid = *counter;
            let delta = child.delta().expect("child has an increment");
            out.push_str(&format!(
                "  n{} -> n{} [label=\"({})\"];\n",
                id,
                cid,
                join(&delta.0)
            ));
            emit(child, cid, counter, out);
        }
    }
    emit(&tree.root, 0, &mut counter, &mut out);
    out.push_str("}\n");
    out
}

/// Rectangle trees: `⊕(level) mult·Y[shape]` in depth-first order; the shape
/// is the node's final diagram as a partition.
pub fn rect_text(tree: &RectTree) -> String {
    let mut out = String::new();
    tree.root.walk(&mut |node| {
        out.push_str(&format!(
            "⊕({}) {}·Y[{}]\n",
            node.level,
            node.multiplicity,
            join(&node.final_shape)
        ));
    });
    out
}

#[derive(Serialize)]
struct RectJson {
    rects: Vec<RectJsonRect>,
    root: RectNodeJson,
}

#[derive(Serialize)]
struct RectJsonRect {
    rows: usize,
    cols: i64,
}

#[derive(Serialize)]
struct RectNodeJson {
    level: usize,
    diagram: Vec<i64>,
    final_shape: Vec<i64>,
    dominance_numbers: Vec<i64>,
    mult: i64,
    children: Vec<RectNodeJson>,
}

fn rect_node_json(node: &RectNode) -> Result<RectNodeJson, RenderError> {
    Ok(RectNodeJson {
        level: node.level,
        diagram: node.state.shape.clone(),
        final_shape: node.final_shape.clone(),
        dominance_numbers: node.state.dominance_numbers.clone(),
        mult: mult_i64(&node.multiplicity)?,
        children: node
            .children
            .iter()
            .map(rect_node_json)
            .collect::<Result<_, _>>()?,
    })
}

pub fn rect_json(tree: &RectTree) -> Result<String, RenderError> {
    let doc = RectJson {
        rects: tree
            .rects
            .iter()
            .map(|r| RectJsonRect {
                rows: r.rows,
                cols: r.cols,
            })
            .collect(),
        root: rect_node_json(&tree.root)?,
    };
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}

pub fn rect_dot(tree: &RectTree) -> String {
    let mut out = String::from("digraph rectangles {\n");
    let mut counter = 0usize;
    fn emit(node: &RectNode, id: usize, counter: &mut usize, out: &mut String) {
        out.push_str(&format!(
            "  n{} [label=\"{}·Y[{}]\"];\n",
            id,
            node.multiplicity,
            join(&node.final_shape)
        ));
        for child in &node.children {
            *counter += 1;
            let cid = *counter;
            out.push_str(&format!(
                "  n{} -> n{} [label=\"({})\"];\n",
                id,
                cid,
                join(&child.state.dominance_numbers)
            ));
            emit(child, cid, counter, out);
        }
    }
    emit(&tree.root, 0, &mut counter, &mut out);
    out.push_str("}\n");
    out
}

#[derive(Serialize, Deserialize)]
struct CharacterJson {
    algebra: String,
    terms: Vec<CharacterTermJson>,
}

#[derive(Serialize, Deserialize)]
struct CharacterTermJson {
    weight: Vec<i64>,
    mult: i64,
}

/// `{"algebra":"B3","terms":[{"weight":[0,1,0],"mult":1},...]}` in sorted
/// weight order.
pub fn character_json(ch: &Character) -> Result<String, RenderError> {
    let doc = CharacterJson {
        algebra: ch.spec.name(),
        terms: ch
            .terms()
            .map(|(w, c)| {
                Ok(CharacterTermJson {
                    weight: w.0.clone(),
                    mult: mult_i64(c)?,
                })
            })
            .collect::<Result<_, RenderError>>()?,
    };
    Ok(serde_json::to_string(&doc)? + "\n")
}

pub fn parse_character_json(s: &str) -> Result<Character, RenderError> {
    let doc: CharacterJson = serde_json::from_str(s)?;
    let spec = AlgebraSpec::parse(&doc.algebra)
        .map_err(|e| RenderError::BadCharacterJson(e.to_string()))?;
    let mut ch = Character::zero(spec);
    for term in doc.terms {
        if term.weight.len() != spec.rank {
            return Err(RenderError::BadCharacterJson(format!(
                "weight {:?} has wrong length for {}",
                term.weight,
                spec.name()
            )));
        }
        let w = Weight(term.weight);
        if !w.is_dominant() {
            return Err(RenderError::BadCharacterJson(format!(
                "weight {w} is not dominant"
            )));
        }
        ch.add_term(&w, &BigInt::from(term.mult));
    }
    Ok(ch)
}

/// One term per line, sorted: `mult·V[weight]`.
pub fn character_text(ch: &Character) -> String {
    if ch.is_zero() {
        return "0\n".to_string();
    }
    let mut out = String::new();
    for (w, c) in ch.terms() {
        out.push_str(&format!("{}·V[{}]\n", c, join(&w.0)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kr::FactorList;
    use crate::lie::CartanData;
    use crate::tree::build_tree;

    #[test]
    fn text_tree_e6_w1_2() {
        let spec = AlgebraSpec::parse("E6").unwrap();
        let data = CartanData::new(spec);
        let fl = FactorList::single(spec, 2, 1).unwrap();
        let tree = build_tree(&data, &fl, None).unwrap();
        assert_eq!(
            tree_text(&tree),
            "⊕(0) 1·V[0,1,0,0,0,0]\n⊕(1) 1·V[0,0,0,0,0,0]\n"
        );
    }

    #[test]
    fn dot_roundtrip_counts() {
        let spec = AlgebraSpec::parse("E6").unwrap();
        let data = CartanData::new(spec);
        let fl = FactorList::single(spec, 4, 2).unwrap();
        let tree = build_tree(&data, &fl, None).unwrap();
        let dot = tree_dot(&tree);
        let nodes = dot.lines().filter(|l| l.contains("[label=") && !l.contains("->")).count();
        let edges = dot.lines().filter(|l| l.contains("->")).count();
        assert_eq!(nodes, tree.node_count());
        assert_eq!(edges, tree.node_count() - 1);
    }

    #[test]
    fn character_json_roundtrip() {
        let spec = AlgebraSpec::parse("B3").unwrap();
        let ch = Character::from_terms(
            spec,
            [
                (Weight(vec![0, 1, 0]), BigInt::from(1)),
                (Weight(vec![0, 0, 0]), BigInt::from(2)),
            ],
        );
        let s = character_json(&ch).unwrap();
        assert_eq!(
            s,
            "{\"algebra\":\"B3\",\"terms\":[{\"weight\":[0,0,0],\"mult\":2},{\"weight\":[0,1,0],\"mult\":1}]}\n"
        );
        let back = parse_character_json(&s).unwrap();
        assert_eq!(back, ch);
        assert!(parse_character_json("{\"algebra\":\"B3\",\"terms\":[{\"weight\":[1],\"mult\":1}]}").is_err());
    }

    #[test]
    fn json_tree_is_stable() {
        let spec = AlgebraSpec::parse("A2").unwrap();
        let data = CartanData::new(spec);
        let fl = FactorList::new(spec, vec![(1, 1), (2, 1)]).unwrap();
        let tree = build_tree(&data, &fl, None).unwrap();
        let a = tree_json(&tree).unwrap();
        let b = tree_json(&tree).unwrap();
        assert_eq!(a, b);
        assert!(a.contains("\"algebra\": \"A2\""));
    }
}
