# HTTP API package for quadzeros
