from .ghz_protocols import (
    TargetComplexSpec,
    TargetRealSpec,
    ghz_to_complex,
    ghz_to_real,
    real_target_grid,
    run_protocol,
)
from .reachability import enumerate_reachable_real_targets
