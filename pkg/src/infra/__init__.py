# Infrastructure and configuration
