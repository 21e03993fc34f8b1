"""Homomorphic measurement gadgets and logical compilation for hypergraph product codes."""

from .classical import (ClassicalCode, QuasiCyclicCode, QuasiCyclicSpec, OGSC_SPECS, augment,
                        distance_bruteforce, expand_quasi_cyclic, hamming_code, information_bits,
                        ogsc_code, puncture, repetition_code)
from .complexes import ChainComplex, CssCode, hgp, homological_3d, homological_4d, min_logical_weight
from .compiler import CompilerConfig, compile_layer, cost_report, layer_equivalent, random_layer
from .gadgets import certify, cube_ppms, fold_czs, fold_hswap, grid_ppms, horizontal_ppms, translation_gadget
from .homomorphism import ChainMap, lift_to_product, modify_code, puncture_augment_map
from .logical import LogicalCircuit, simulate_logical
from .logical_gadgets import ghz_schedule, selective_teleport
from .schedule import GadgetSchedule, GadgetStep
from .singleshot import SoundnessParams, metacheck_repair, single_shot_prepare, soundness_probe
from .subroutines import adder_schedule, msd_round_schedule, msi_schedule

__version__ = "0.1.0"

__all__ = [
    "ClassicalCode",
    "QuasiCyclicCode",
    "QuasiCyclicSpec",
    "OGSC_SPECS",
    "augment",
    "distance_bruteforce",
    "expand_quasi_cyclic",
    "hamming_code",
    "information_bits",
    "ogsc_code",
    "puncture",
    "repetition_code",
    "ChainComplex",
    "CssCode",
    "hgp",
    "homological_3d",
    "homological_4d",
    "min_logical_weight",
    "CompilerConfig",
    "compile_layer",
    "cost_report",
    "layer_equivalent",
    "random_layer",
    "certify",
    "cube_ppms",
    "fold_czs",
    "fold_hswap",
    "grid_ppms",
    "horizontal_ppms",
    "translation_gadget",
    "ChainMap",
    "lift_to_product",
    "modify_code",
    "puncture_augment_map",
    "LogicalCircuit",
    "simulate_logical",
    "ghz_schedule",
    "selective_teleport",
    "GadgetSchedule",
    "GadgetStep",
    "SoundnessParams",
    "metacheck_repair",
    "single_shot_prepare",
    "soundness_probe",
    "adder_schedule",
    "msd_round_schedule",
    "msi_schedule",
]
