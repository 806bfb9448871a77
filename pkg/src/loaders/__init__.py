# Text file readers and writers
