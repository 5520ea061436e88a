pub mod effdim;
pub mod ist;
pub mod noise;
pub mod reduce;
pub mod scaling;
pub mod train;
