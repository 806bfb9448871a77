# Scalar domain and dense matrices
