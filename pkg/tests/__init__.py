# PacketQTH Test Suite
