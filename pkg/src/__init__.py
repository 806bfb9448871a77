# Tropical Tensor Toolkit - Source Package
