# Artifact storage and plotting
