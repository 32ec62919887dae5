# Fields, constants, asymptotics and the validation harness
