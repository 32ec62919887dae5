# Command-line application layer
