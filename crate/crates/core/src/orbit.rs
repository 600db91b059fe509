//! `SL₂(ℤ)`-orbits of origamis under retiling.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::origami::{stratum_of, Origami, StratumSignature};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Generator {
    S,
    T,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct OrbitEdge {
    pub from: usize,
    pub to: usize,
    pub generator: Generator,
}

/// Canonical representatives of one orbit, sorted by encoding, with the
/// action of `S` and `T` as index maps.
#[derive(Clone, Debug)]
pub struct OrbitClass {
    representatives: Vec<Origami>,
    s_image: Vec<usize>,
    t_image: Vec<usize>,
    index: HashMap<Origami, usize>,
}

#[derive(Serialize, Deserialize)]
struct OrbitExport {
    representatives: Vec<String>,
    edges: Vec<OrbitEdge>,
}

impl OrbitClass {
    pub fn representatives(&self) -> &[Origami] {
        &self.representatives
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn n(&self) -> usize {
        self.representatives[0].n()
    }

    pub fn signature(&self) -> StratumSignature {
        stratum_of(&self.representatives[0])
    }

    /// Index of the member isomorphic to `o`, if any.
    pub fn index_of(&self, o: &Origami) -> Option<usize> {
        self.index.get(&o.canonical_form()).copied()
    }

    pub fn contains(&self, o: &Origami) -> bool {
        self.index_of(o).is_some()
    }

    pub fn s_image(&self) -> &[usize] {
        &self.s_image
    }

    pub fn t_image(&self) -> &[usize] {
        &self.t_image
    }

    pub fn edges(&self) -> Vec<OrbitEdge> {
        let mut edges = Vec::with_capacity(2 * self.len());
        for i in 0..self.len() {
            edges.push(OrbitEdge { from: i, to: self.s_image[i], generator: Generator::S });
            edges.push(OrbitEdge { from: i, to: self.t_image[i], generator: Generator::T });
        }
        edges
    }

    /// JSON: canonical encodings in text format plus the generator edges.
    pub fn to_json(&self) -> String {
        let export = OrbitExport {
            representatives: self.representatives.iter().map(Origami::to_string).collect(),
            edges: self.edges(),
        };
        serde_json::to_string_pretty(&export).expect("serializable")
    }
}

/// BFS closure of `canonical_form(o)` under retiling by `S` and `T`.
pub fn sl2z_orbit(o: &Origami) -> OrbitClass {
    let start = o.canonical_form();
    let mut found: HashMap<Origami, usize> = HashMap::from([(start.clone(), 0)]);
    let mut members = vec![start.clone()];
    let mut raw_edges: Vec<(usize, usize)> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let x = members[i].clone();
        let mut images = [0usize; 2];
        for (slot, y) in [x.rotate(), x.shear(1)].into_iter().enumerate() {
            let y = y.canonical_form();
            let j = match found.get(&y) {
                Some(&j) => j,
                None => {
                    let j = members.len();
                    found.insert(y.clone(), j);
                    members.push(y);
                    queue.push_back(j);
                    j
                }
            };
            images[slot] = j;
        }
        if raw_edges.len() <= i {
            raw_edges.resize(i + 1, (0, 0));
        }
        raw_edges[i] = (images[0], images[1]);
    }

    // deterministic order: sort by canonical encoding
    let mut order: Vec<usize> = (0..members.len()).collect();
    order.sort_by(|&a, &b| members[a].cmp(&members[b]));
    let mut new_index = vec![0usize; members.len()];
    for (new, &old) in order.iter().enumerate() {
        new_index[old] = new;
    }
    let representatives: Vec<Origami> = order.iter().map(|&old| members[old].clone()).collect();
    let s_image = order.iter().map(|&old| new_index[raw_edges[old].0]).collect();
    let t_image = order.iter().map(|&old| new_index[raw_edges[old].1]).collect();
    let index = representatives.iter().cloned().enumerate().map(|(i, o)| (o, i)).collect();
    OrbitClass { representatives, s_image, t_image, index }
}

/// Partitions a list of origamis into orbits; orbits are ordered by their
/// smallest member.
pub fn group_into_orbits(origamis: &[Origami]) -> Vec<OrbitClass> {
    let mut orbits: Vec<OrbitClass> = Vec::new();
    let mut sorted: Vec<Origami> = origamis.iter().map(Origami::canonical_form).collect();
    sorted.sort();
    sorted.dedup();
    for o in &sorted {
        if orbits.iter().any(|orb| orb.contains(o)) {
            continue;
        }
        orbits.push(sl2z_orbit(o));
    }
    orbits.sort_by(|a, b| a.representatives[0].cmp(&b.representatives[0]));
    orbits
}
