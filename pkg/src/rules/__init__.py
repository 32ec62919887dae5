# Run-config schemas and bundled presets
