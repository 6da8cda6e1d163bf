from hofree.rmt.ensembles import (GUE, DeterministicDiagonal, Ensemble, HaarConjugate, Wishart, haar_unitary,
                                  parse_ensemble, sample_rng)
from hofree.rmt.estimators import (estimate_phi, finite_n_table, sampled_oracle, verify_asymptotic_freeness,
                                   verify_entry_cumulants, verify_fluctuations, verify_haar_moments)
from hofree.rmt.report import FluctuationReport
from hofree.rmt.runner import SampleConfig, SampleRunner
