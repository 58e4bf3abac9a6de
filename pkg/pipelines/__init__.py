# Orchestration package for quadzeros
