//! Dispatch to the closed formulas by the number of nodes.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::PlumbingGraph;
use crate::lattice::Lattice;
use crate::lens::LensData;
use crate::rational::{q, Q};
use crate::seifert::Seifert;
use crate::series::norm_r;
use crate::twonode::TwoNode;

/// The closed formula applicable to a graph.
#[derive(Debug, Clone)]
pub enum ClosedForm {
    /// A chain, with the chain order of its vertices.
    Lens(LensData, Vec<usize>),
    Seifert(Seifert),
    TwoNode(TwoNode),
}

impl ClosedForm {
    pub fn new(g: &PlumbingGraph) -> Result<Self> {
        match g.nodes().len() {
            0 => {
                let (d, order) = LensData::from_graph(g)?;
                Ok(ClosedForm::Lens(d, order))
            }
            1 => Ok(ClosedForm::Seifert(Seifert::new(g)?)),
            2 => Ok(ClosedForm::TwoNode(TwoNode::new(g)?)),
            n => Err(Error::NodeCount { expected: 2, found: n }),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ClosedForm::Lens(..) => "lens",
            ClosedForm::Seifert(_) => "seifert",
            ClosedForm::TwoNode(_) => "twonode",
        }
    }

    /// `sw_{h*σ_can}` for every class, in the order of [`Lattice::classes`].
    pub fn sw_table(&self, lat: &Lattice) -> Result<Vec<Q>> {
        match self {
            ClosedForm::Lens(d, order) => {
                let g = lat.group();
                let gs = lat.class_of_e_star(*order.last().unwrap());
                let mut out = alloc::vec![Q::from_integer(0); g.order() as usize];
                for a in 0..d.p {
                    out[g.index(&g.scale(&gs, a))] = d.sw(a);
                }
                Ok(out)
            }
            ClosedForm::Seifert(s) => lat.classes().iter().map(|h| s.sw(h)).collect(),
            ClosedForm::TwoNode(t) => lat.classes().iter().map(|h| t.sw(h)).collect(),
        }
    }

    /// `pc(Z_h)` for every class, from `pc(Z_h) = -sw_{-h*σ_can} - ((K+2r_h)² + |V|)/8`.
    pub fn pc_table(&self, lat: &Lattice) -> Result<Vec<Q>> {
        match self {
            ClosedForm::Seifert(s) => lat.classes().iter().map(|h| Ok(q(s.pc(h)?))).collect(),
            ClosedForm::TwoNode(t) => lat.classes().iter().map(|h| Ok(q(t.pc(h)?))).collect(),
            ClosedForm::Lens(..) => {
                let sw = self.sw_table(lat)?;
                let g = lat.group();
                Ok(lat.classes().iter().map(|h| -sw[g.index(&g.neg(h))] - norm_r(lat, h)).collect())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{seifert_to_graph, two_node_to_graph};
    use crate::series::{sw_table, DEFAULT_BUDGET};

    #[test]
    fn closed_forms_match_the_oracle() {
        let graphs = [
            LensData::new(7, 3).unwrap().graph(),
            PlumbingGraph::from_parts(&[("a", -2), ("b", -5), ("c", -2)], &[("b", "a"), ("b", "c")]).unwrap(),
            PlumbingGraph::from_parts(&[("a", -4)], &[]).unwrap(),
            seifert_to_graph(-2, &[(3, 1), (3, 2), (5, 2)]).unwrap(),
            two_node_to_graph(-2, &[(2, 1), (2, 1)], &[], -3, &[(2, 1), (2, 1)]).unwrap(),
        ];
        for g in &graphs {
            let lat = Lattice::new(g);
            let cf = ClosedForm::new(g).unwrap();
            assert_eq!(cf.sw_table(&lat).unwrap(), sw_table(&lat, DEFAULT_BUDGET).unwrap(), "{}", cf.name());
            let pcs = cf.pc_table(&lat).unwrap();
            for (h, pc) in lat.classes().iter().zip(pcs) {
                assert_eq!(pc, crate::series::pc_from_counting(&lat, h, DEFAULT_BUDGET).unwrap());
            }
        }
        let three = PlumbingGraph::from_parts(
            &[("a", -2), ("b", -2), ("c", -2), ("d", -2), ("e", -2), ("f", -2), ("n1", -3), ("n2", -3), ("n3", -3)],
            &[("n1", "a"), ("n1", "b"), ("n1", "n2"), ("n2", "c"), ("n2", "n3"), ("n3", "d"), ("n3", "e"), ("n2", "f")],
        )
        .unwrap();
        assert!(matches!(ClosedForm::new(&three), Err(Error::NodeCount { expected: 2, found: 3 })));
    }
}
