from .subvalues import BlockTable, FunctionSignature, all_subvalues, lemma_sum_matrix

__all__ = ["BlockTable", "FunctionSignature", "all_subvalues", "lemma_sum_matrix"]
