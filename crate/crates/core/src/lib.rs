pub mod fock;
pub mod heisenberg;
pub mod macmahon;
pub mod parse;
pub mod partition;
pub mod planepart;
pub mod series;
pub mod symgrp;
pub mod verify;
