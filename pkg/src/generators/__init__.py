# Named graph families and random corpora
