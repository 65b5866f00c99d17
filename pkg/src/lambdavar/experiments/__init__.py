from .corpus import KINDS, RandomFunctionSpec, corpus, random_grid
from .report import StudyReport, to_csv, write_svg
from .studies import (
    RUNNERS,
    STUDIES,
    StudyConfig,
    default_config,
    run_convergence_study,
    run_divergence_study,
    run_embedding_study,
    run_inclusion_study,
    run_local_study,
    run_study,
    run_vn_study,
)
