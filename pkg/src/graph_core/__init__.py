# Graph type, traversal helpers and graph file formats
