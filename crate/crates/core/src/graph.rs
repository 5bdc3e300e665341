//! Half-edge-pairing multigraph: loops and parallel edges are first-class.
//! Immutable after construction; all structural and cut algorithms consume
//! this type.

use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};

/// A multigraph on vertices `0..n` stored as an edge multiset. A loop is
/// stored as `(v, v)` and contributes 2 to its vertex degree. Edge order
/// and endpoint orientation are preserved exactly as given, so edge-list
/// files round-trip byte for byte.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<(u32, u32)>,
    degrees: Vec<u32>,
    /// adj[v] lists (neighbor, edge id); a loop appears twice.
    adj: Vec<Vec<(u32, u32)>>,
}

impl MultiGraph {
    pub fn from_edges<I: IntoIterator<Item = (u32, u32)>>(n: usize, edges: I) -> Result<Self> {
        let edges: Vec<(u32, u32)> = edges.into_iter().collect();
        let mut degrees = vec![0u32; n];
        let mut adj: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
        for (id, &(u, v)) in edges.iter().enumerate() {
            if u as usize >= n || v as usize >= n {
                return Err(Error::InvalidArgument(format!(
                    "edge ({u}, {v}) out of range for n = {n}"
                )));
            }
            let id = id as u32;
            degrees[u as usize] += 1;
            degrees[v as usize] += 1;
            adj[u as usize].push((v, id));
            adj[v as usize].push((u, id));
        }
        Ok(Self { n, edges, degrees, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Degree of `v`, counting a loop twice.
    pub fn degree(&self, v: usize) -> u32 {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// Neighbors of `v` with edge ids; a loop at `v` appears twice.
    pub fn adjacency(&self, v: usize) -> &[(u32, u32)] {
        &self.adj[v]
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|&&(u, v)| u == v).count()
    }

    /// True when the graph has no loops and no parallel edges.
    pub fn is_simple(&self) -> bool {
        let mut seen: Vec<(u32, u32)> = Vec::with_capacity(self.edges.len());
        for &(u, v) in &self.edges {
            if u == v {
                return false;
            }
            seen.push((u.min(v), u.max(v)));
        }
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    /// Number of edges between `u` and `v` (parallel edges each counted,
    /// loops never). Scans the smaller adjacency list.
    pub fn edge_multiplicity(&self, u: usize, v: usize) -> u32 {
        if u == v {
            return 0;
        }
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() { (u, v) } else { (v, u) };
        self.adj[a].iter().filter(|&&(w, _)| w as usize == b).count() as u32
    }

    /// Write the edge-list format: header "n m", then one "u v" line per
    /// edge, 1-based, loops as "u u", parallel edges repeated.
    pub fn write_edge_list<W: Write>(&self, w: W) -> Result<()> {
        let mut w = BufWriter::new(w);
        writeln!(w, "{} {}", self.n, self.edges.len())?;
        for &(u, v) in &self.edges {
            writeln!(w, "{} {}", u + 1, v + 1)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_edge_list<R: Read>(r: R) -> Result<Self> {
        let mut lines = BufReader::new(r).lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty edge-list file".into()))??;
        let mut it = header.split_whitespace();
        let n: usize = it
            .next()
            .ok_or_else(|| Error::Parse("missing vertex count in header".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("bad vertex count: {e}")))?;
        let m: usize = it
            .next()
            .ok_or_else(|| Error::Parse("missing edge count in header".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("bad edge count: {e}")))?;
        let mut edges = Vec::with_capacity(m);
        for (i, line) in lines.enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let u: u32 = it
                .next()
                .unwrap()
                .parse()
                .map_err(|e| Error::Parse(format!("edge line {}: {e}", i + 1)))?;
            let v: u32 = it
                .next()
                .ok_or_else(|| Error::Parse(format!("edge line {}: missing endpoint", i + 1)))?
                .parse()
                .map_err(|e| Error::Parse(format!("edge line {}: {e}", i + 1)))?;
            if u == 0 || v == 0 {
                return Err(Error::Parse(format!("edge line {}: vertices are 1-based", i + 1)));
            }
            edges.push((u - 1, v - 1));
        }
        if edges.len() != m {
            return Err(Error::Parse(format!(
                "header promised {m} edges, found {}",
                edges.len()
            )));
        }
        MultiGraph::from_edges(n, edges)
    }

    pub fn write_edge_list_path<P: AsRef<Path>>(&self, path: P) -> Result<()> {
        self.write_edge_list(std::fs::File::create(path)?)
    }

    pub fn read_edge_list_path<P: AsRef<Path>>(path: P) -> Result<Self> {
        Self::read_edge_list(std::fs::File::open(path)?)
    }
}
