use crate::network::{
    build_schedule, enumerate_paths, validate_metric, EvaderPath, NetworkError, PathOrder,
    PursuerMetric, RoadNetwork, VisitSchedule, DEFAULT_PATH_CAP,
};
use crate::pathset::PathSet;

/// Everything the solver, simulator and oracle read: the network, its
/// enumerated paths, the visit schedule and a validated pursuer metric.
#[derive(Clone, Debug)]
pub struct Instance {
    pub network: RoadNetwork,
    pub paths: Vec<EvaderPath>,
    pub schedule: VisitSchedule,
    pub metric: PursuerMetric,
}

impl Instance {
    pub fn new(network: RoadNetwork, metric: PursuerMetric) -> Result<Self, NetworkError> {
        Self::with_options(network, metric, PathOrder::default(), DEFAULT_PATH_CAP)
    }

    pub fn with_options(
        network: RoadNetwork,
        metric: PursuerMetric,
        order: PathOrder,
        cap: usize,
    ) -> Result<Self, NetworkError> {
        let paths = enumerate_paths(&network, order, cap)?;
        let schedule = build_schedule(&paths, network.node_count())?;
        validate_metric(&metric, &network).map_err(NetworkError::InvalidMetric)?;
        Ok(Instance {
            network,
            paths,
            schedule,
            metric,
        })
    }

    /// Same network and paths under another metric.
    pub fn with_metric(&self, metric: PursuerMetric) -> Result<Self, NetworkError> {
        validate_metric(&metric, &self.network).map_err(NetworkError::InvalidMetric)?;
        Ok(Instance {
            metric,
            ..self.clone()
        })
    }

    pub fn node_count(&self) -> usize {
        self.network.node_count()
    }

    pub fn path_count(&self) -> usize {
        self.paths.len()
    }

    /// `{1..n}`, the pursuer's information on first reaching the entry.
    pub fn initial_set(&self) -> PathSet {
        self.schedule.all_paths()
    }
}
