# Scripts package for quadzeros
