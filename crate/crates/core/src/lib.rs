//! Exact computations in bounded derived categories of Dynkin quivers and
//! their orbit categories.

pub mod derived;
pub mod error;
pub mod linalg;
pub mod mesh;
pub mod orbit;
pub mod quiver;
pub mod rep;

pub use derived::{DerivedCategory, DerivedIndec, DerivedObject, Dictionary, FunctorWord, Oracle};
pub use error::{Error, Result};
pub use linalg::{Matrix, Rational};
pub use mesh::{MeshCategory, MeshPath, Morphism, MorphismSpace, ZQVertex};
pub use orbit::{ArQuiver, ConditionReport, CyProbe, EndAlgebra, OrbitCategory, OrbitHom, OrbitMorphism};
pub use quiver::{cartan_data, classify_dynkin, CartanData, DimVector, DynkinClass, Family, Quiver};
