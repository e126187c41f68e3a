"""Exact workbench for Toeplitz and generalized Oxtoby subshift schedules.

Construct schedules from finite fill data, analyze their hole structure and
parts, and decide conjugacy at a finite horizon through block-permutation
witnesses. All arithmetic is exact; every verdict carries evidence.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .analysis import (
    Violation,
    check_gen_oxtoby,
    fill_level,
    holes,
    is_piece,
    oxtoby_offsets,
    smallest_divisor_period,
)
from .conjugacy import (
    BlockMap,
    ConjugacyReport,
    chi_equiv,
    conjugacy_test,
    dkl_search,
    dp_fin,
    f_t,
    infer_block_map,
    parts_dp,
    relabel,
    shift_spec,
    verify_witness,
)
from .constructions import (
    DownarowiczInput,
    downarowicz_build,
    language_words,
    oxtoby_classic,
    staircase_periods,
    word_length_law,
)
from .measures import (
    CylinderMeasure,
    WeightScheme,
    d_double_star,
    d_star,
    density_profile,
    empirical_measure,
    freq_double_star,
    freq_star,
)
from .parts import PartDescriptor, chi, gap_check, parts, parts_star
from .spec import (
    CellStatus,
    FillStep,
    PeriodStructure,
    ToeplitzSpec,
    apply_fill,
    blank_certificate,
    level_word,
    load_spec,
    save_spec,
    spec_document,
    validate_spec,
    window,
)
from .verdicts import Status, Verdict
from .words import Alphabet, PartialWord

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "BlockMap",
    "CellStatus",
    "ConjugacyReport",
    "CylinderMeasure",
    "DownarowiczInput",
    "FillStep",
    "KERNEL_BACKEND",
    "PartDescriptor",
    "PartialWord",
    "PeriodStructure",
    "Status",
    "ToeplitzSpec",
    "Verdict",
    "Violation",
    "WeightScheme",
    "apply_fill",
    "blank_certificate",
    "check_gen_oxtoby",
    "chi",
    "chi_equiv",
    "conjugacy_test",
    "d_double_star",
    "d_star",
    "density_profile",
    "dkl_search",
    "downarowicz_build",
    "dp_fin",
    "empirical_measure",
    "f_t",
    "fill_level",
    "freq_double_star",
    "freq_star",
    "gap_check",
    "holes",
    "infer_block_map",
    "is_piece",
    "language_words",
    "level_word",
    "load_spec",
    "oxtoby_classic",
    "oxtoby_offsets",
    "parts",
    "parts_dp",
    "parts_star",
    "relabel",
    "save_spec",
    "shift_spec",
    "smallest_divisor_period",
    "spec_document",
    "staircase_periods",
    "validate_spec",
    "verify_witness",
    "window",
    "word_length_law",
]
