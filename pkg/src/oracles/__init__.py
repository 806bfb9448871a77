# Brute-force reference implementations
