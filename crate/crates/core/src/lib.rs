pub mod builders;
pub mod exactgeom;
pub mod monopath;
pub mod oriented;
pub mod posetalg;
pub mod suite;
