# Assignment, spectral and equation solvers
