# Pipeline orchestration
