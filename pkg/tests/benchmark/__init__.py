# flowhom benchmark suite
# Corpus-scale sweeps with deterministic assertions
