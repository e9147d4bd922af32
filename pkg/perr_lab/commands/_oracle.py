import logging
from typing import List, NamedTuple, Union

from perr_lab.config import RunConfig, load_config
from perr_lab.dgp import enumerate_population
from perr_lab.estimators import EstimateValue

logger = logging.getLogger(__name__)


class OracleRow(NamedTuple):
    scenario_id: int
    dropout_target: float
    gamma0: float
    marginal_dropout: float
    perr_prev: EstimateValue
    perr_comp: EstimateValue
    rr: EstimateValue


def oracle(config: Union[str, dict, RunConfig]) -> List[OracleRow]:
    """
    Exact asymptotic estimator values of every grid cell of a configuration.

    Parameters
    ----------
    config : str, dict or RunConfig
        Configuration as file path, parsed JSON object or RunConfig.

    Returns
    -------
    list of OracleRow in (scenario, dropout level) order
    """
    config = load_config(config)
    rows = []
    for cell in config.grid.cells():
        population = enumerate_population(
            config.grid.dgp_params, cell.spec, cell.gamma0
        )
        rows.append(
            OracleRow(
                scenario_id=cell.scenario_id,
                dropout_target=cell.dropout_target,
                gamma0=cell.gamma0,
                marginal_dropout=population.marginal_dropout,
                perr_prev=population.perr_prev,
                perr_comp=population.perr_comp,
                rr=population.rr,
            )
        )
    return rows
