# Tests package for quadzeros
