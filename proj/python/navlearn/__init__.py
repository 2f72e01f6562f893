"""Toolkit for cycle-detection learners on nondeterministic navigation tasks.

The heavy lifting lives in the compiled `navlearn._core` extension; this
package re-exports its public surface.
"""

from navlearn._core import (
    Task,
    TaskFormatError,
    backward_layers,
    chain_task,
    check_necessary_conditions,
    convergence_experiment_csv,
    corridor_task,
    derive_seed,
    forward_layers,
    goal_states,
    grid_task_from_sketch,
    ground,
    is_final_policy,
    is_reducible,
    load_task_file,
    parse_task,
    quantile,
    reduce_set,
    reducibility_layers,
    run_until_convergence,
    serialize_task,
    unstable_and_border,
    validate,
)

__all__ = [
    "Task",
    "TaskFormatError",
    "backward_layers",
    "chain_task",
    "check_necessary_conditions",
    "convergence_experiment_csv",
    "corridor_task",
    "derive_seed",
    "forward_layers",
    "goal_states",
    "grid_task_from_sketch",
    "ground",
    "is_final_policy",
    "is_reducible",
    "load_task_file",
    "parse_task",
    "quantile",
    "reduce_set",
    "reducibility_layers",
    "run_until_convergence",
    "serialize_task",
    "unstable_and_border",
    "validate",
]
