# Configuration and the error hierarchy
